#ifndef SU11_ERRORS_HPP
#define SU11_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace su11 {

/** @brief Input outside the domain of an operation. */
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/** @brief A bracketed solve failed to converge or lost its bracket. */
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** @brief The point cannot be reached by the requested geodesic family. */
struct NotInDomain : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace su11

#endif  // SU11_ERRORS_HPP
