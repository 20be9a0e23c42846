#include "monocone/error.hpp"

#include <sstream>

namespace monocone {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotReflexive: return "NotReflexive";
    case ErrorKind::kNotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::kNotTransitive: return "NotTransitive";
    case ErrorKind::kSizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNotPointed: return "NotPointed";
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kZeroToleranceViolation: return "ZeroToleranceViolation";
    case ErrorKind::kEpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::kNotMonotone: return "NotMonotone";
    case ErrorKind::kNotIrreducible: return "NotIrreducible";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kNoInducedEmbedding: return "NoInducedEmbedding";
    case ErrorKind::kCaseNotApplicable: return "CaseNotApplicable";
    case ErrorKind::kMismatch: return "MismatchError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string describe_witness(ErrorKind kind, const std::vector<int>& w) {
  std::ostringstream out;
  switch (kind) {
    case ErrorKind::kNotReflexive:
      out << "element " << w.at(0) << " is not related to itself";
      break;
    case ErrorKind::kNotAntisymmetric:
      out << "(" << w.at(0) << "," << w.at(1) << ") and (" << w.at(1) << ","
          << w.at(0) << ") both present";
      break;
    case ErrorKind::kNotTransitive:
      out << "(" << w.at(0) << "," << w.at(1) << ") and (" << w.at(1) << ","
          << w.at(2) << ") present but (" << w.at(0) << "," << w.at(2)
          << ") missing";
      break;
    default:
      out << "invalid relation";
  }
  return out.str();
}

std::string describe_classes(const std::vector<std::vector<int>>& classes) {
  std::ostringstream out;
  out << "communicating classes:";
  for (const auto& c : classes) {
    out << " {";
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    out << "}";
  }
  return out.str();
}

}  // namespace

PosetAxiomError::PosetAxiomError(ErrorKind kind, std::vector<int> witness)
    : Error(kind, describe_witness(kind, witness)),
      witness_(std::move(witness)) {}

NotIrreducibleError::NotIrreducibleError(std::vector<std::vector<int>> classes)
    : Error(ErrorKind::kNotIrreducible, describe_classes(classes)),
      classes_(std::move(classes)) {}

}  // namespace monocone
