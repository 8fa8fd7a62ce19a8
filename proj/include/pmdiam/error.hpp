#pragma once

#include <stdexcept>
#include <string>

namespace pmdiam {

/// Failure categories surfaced by the library. Every thrown pmdiam::Error
/// carries exactly one of these.
enum class Errc {
  cap_exceeded,
  not_alternating,
  no_perfect_matching,
  disconnected_skeleton,
  unreachable_optimum,
  edge_absent,
  invalid_height,
  invalid_parameter,
  index_out_of_range,
  wrong_origin,
  precondition_violation,
  e_not_in_matching,
  not_hamiltonian,
  not_spanning,
  too_small,
  unbalanced_sets,
  unbounded_direction,
  zero_step,
  unreachable,
  invalid_graph,
  parse_error,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::cap_exceeded: return "cap-exceeded";
    case Errc::not_alternating: return "not-alternating";
    case Errc::no_perfect_matching: return "no-perfect-matching";
    case Errc::disconnected_skeleton: return "disconnected-skeleton";
    case Errc::unreachable_optimum: return "unreachable-optimum";
    case Errc::edge_absent: return "edge-absent";
    case Errc::invalid_height: return "invalid-height";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::index_out_of_range: return "index-out-of-range";
    case Errc::wrong_origin: return "wrong-origin";
    case Errc::precondition_violation: return "precondition-violation";
    case Errc::e_not_in_matching: return "e-not-in-matching";
    case Errc::not_hamiltonian: return "not-hamiltonian";
    case Errc::not_spanning: return "not-spanning";
    case Errc::too_small: return "too-small";
    case Errc::unbalanced_sets: return "unbalanced-sets";
    case Errc::unbounded_direction: return "unbounded-direction";
    case Errc::zero_step: return "zero-step";
    case Errc::unreachable: return "unreachable";
    case Errc::invalid_graph: return "invalid-graph";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pmdiam
