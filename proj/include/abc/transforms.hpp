#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/graph.hpp"

namespace abc {

// Tree rewrites that remove forbidden branch configurations from
// candidate minimal-ABC trees, each paired with a closed-form expression
// for (or upper bound on) the resulting change in ABC index.
//
// A location is a list of vertices in a fixed role order per kind:
//   T_PRO05          u, w (B1 root), v (B_k root, k >= 5)
//   TA1, TA2         u, w (B1 root), v (B4 root)
//   TB               u, w (B2 root), v (B4 root)
//   T11, T12         u1, u2, v1, v2, v3   (three B_{>=5} roots, two parents)
//   T13              u1, v1, v2, v3       (three B_{>=5} roots, one parent)
//   T211             u1, v1, u2, v2, v3   (v3 a B2/B3 root under u2)
//   T212             u1, v1, u2, v2, v3, v4
//   T221             u1, v1, v2, v3       (v3 a B2/B3 root under u1)
//   T222             u1, v1, v2, v3, v4
//   T31              u1, v1, v2           (v2 a B2/B3 root under u1)
//   T32              u1, v1, v2, v3, v4
//   T1_THM4          u1, u2, v1, ..., v5  (five B4 roots, two parents)
//   T2_THM4          u1, v1, ..., v5      (five B4 roots, one parent)
// The composite branch is always attached to the parent named last among
// the u's for T11 (u2), T12 and T13 (u1), T212 (u2), T222 and T32 (u1),
// T1_THM4 (u2) and T2_THM4 (u1).

enum class TransformKind {
  T_PRO05,
  T11,
  T12,
  T13,
  T211,
  T212,
  T221,
  T222,
  T31,
  T32,
  TA1,
  TA2,
  TB,
  T1_THM4,
  T2_THM4,
};

const std::vector<TransformKind>& all_transform_kinds();
std::string to_string(TransformKind kind);
/// Throws std::invalid_argument for unknown names.
TransformKind parse_transform_kind(const std::string& name);

enum class BoundKind { Exact, UpperBound };
std::string to_string(BoundKind b);

enum class StarKind { B2_STAR, B3_STAR, B3_DOUBLE_STAR };

/// Composite branch assembled from cut P2's, as a standalone tree rooted at
/// vertex 0 (the attachment vertex is not included).
struct StarBranch {
  StarKind kind;
  Tree subtree;
};

StarBranch make_star_branch(StarKind kind);

using Location = std::vector<Vertex>;

/// Raised by apply() for a location that does not satisfy the kind's
/// precondition.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct ClosedForm {
  double value = 0.0;
  BoundKind bound = BoundKind::Exact;
  std::string expression;  // registry id of the evaluated formula
  std::string note;        // set when the formula deviates from the printed text
};

struct TransformOutcome {
  TransformKind kind;
  Location loc;
  Tree before;
  Tree after;
  double delta_exact = 0.0;
  ClosedForm closed_form;
  std::map<std::string, double> parameters;
};

/// Every location where `kind` applies. Rooting follows default_root; the
/// "last k branches" selections use breadth-first discovery order from that
/// root (later discovery wins).
std::vector<Location> find_configuration(const Tree& t, TransformKind kind);

/// Performs the rewrite. Throws PreconditionError if `loc` is not among
/// find_configuration(t, kind).
TransformOutcome apply(const Tree& t, TransformKind kind, const Location& loc);

/// Degree parameters the closed form of `kind` reads, in evaluation order.
const std::vector<std::string>& closed_form_parameters(TransformKind kind);

/// Evaluates the closed-form delta (or bound) for `kind`. Throws
/// std::domain_error for missing or out-of-domain parameters.
ClosedForm delta_closed_form(TransformKind kind, const std::map<std::string, double>& degrees);

/// Test instances containing the configuration of `kind`, with hub degrees
/// swept over the ranges the corresponding argument needs. `seed` picks the
/// filler branches.
std::vector<Tree> transform_instances(TransformKind kind, std::uint64_t seed);

struct VerifyReport {
  TransformKind kind;
  std::uint64_t seed = 0;
  int instances = 0;
  double max_delta = -1e300;
  /// Largest closed_form - delta_exact gap seen on exact kinds.
  double max_exact_error = 0.0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty() && instances > 0; }
};

/// Applies `kind` at the first location of every generated instance and
/// checks strict decrease, exactness or bound soundness, and order and
/// connectivity preservation.
VerifyReport verify_decrease(TransformKind kind, std::uint64_t seed);

}  // namespace abc
