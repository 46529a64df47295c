#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cwq/decomposer.hpp"
#include "cwq/expr.hpp"
#include "cwq/quasi_iso.hpp"

namespace cwq {

// Random strict expression over palette k with 1..max_leaves leaves, built
// bottom-up so that every operation meets the strict rules when it is
// applied. Unary operations come in runs, which favours long join/recolour
// chains. Leaves are named v0, v1, ...
CwExpr random_strict_expression(std::mt19937_64& rng, int k, std::size_t max_leaves);

struct CorpusOptions {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  int max_k = 5;
  std::size_t max_leaves = 30;
};

// Deterministic for fixed options. Palette sizes are drawn from 1..max_k.
std::vector<CwExpr> generate_corpus(const CorpusOptions& options);

// Every check the decomposition pipeline promises, run on one expression.
struct InstanceReport {
  bool strict = false;
  std::string error;  // set when some stage threw
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t parts = 0;
  int width = -1;
  VerificationReport verification;
  std::optional<PartQiReport> partqi;  // at c = 2
  std::optional<QiReport> qi;          // projection at c = 3
  std::optional<int> quotient_treewidth;  // exact, when the quotient is small enough
  bool treewidth_ok = true;                // quotient_treewidth <= k - 1 when computed

  bool all_passed() const;
};

// oracle_cap: largest quotient handed to the exact treewidth oracle (0 = never).
InstanceReport audit_expression(const CwExpr& e, std::size_t oracle_cap);

}  // namespace cwq
