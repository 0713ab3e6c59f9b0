#ifndef CFTOWER_ERROR_HPP_
#define CFTOWER_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cftower {

enum class errc {
    unsupported_size,
    not_prime,
    inconsistent_model,
    functional_equation_violation,
    ramified_place,
    pole_at_place,
    invalid_plan,
    side_condition_violated,
    not_certified,
    degenerate_genus,
    parity_violation,
    invalid_profile,
    empty_space,
    parse_error,
    config_error,
};

char const * errc_name(errc c);

/* Every failure raised by the library carries one of the codes above;
 * the CLI maps them onto its exit codes. */
class error : public std::runtime_error {
    errc code_;
  public:
    error(errc code, std::string const & what)
        : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }
};

} // namespace cftower

#endif /* CFTOWER_ERROR_HPP_ */
