#ifndef CFTOWER_REPORT_HPP_
#define CFTOWER_REPORT_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cftower/config.hpp"

namespace cftower {

using json = nlohmann::ordered_json;

/* Machine-readable output is one flat JSON object per line. Every record
 * carries "record" (its kind) and "name". Rationals appear as "p/q" in
 * lowest terms next to a "<key>_decimal" truncated to 12 digits. */

struct spectrum_report {
    std::string name;
    bool is_cover = false;
    place_spectrum spectrum;
    std::optional<zeta_report> zeta;
    std::vector<compositum_count> oracle;
    std::vector<std::string> assumptions;
};

/* zeta check for genus <= 2 curves, brute-force residuals for covers at
 * n = 1, 2 (bounded by dmax) */
spectrum_report build_spectrum_report(config_document const & doc, std::string const & name,
                                      unsigned dmax, unsigned jobs = 1);
std::vector<json> spectrum_records(spectrum_report const & r);
void print_spectrum(std::ostream & out, spectrum_report const & r);

json certificate_record(std::string const & name, int64_t genus, ramification_plan const & plan,
                        tower_certificate const & c);
std::vector<json> certificate_records(std::string const & name, int64_t genus,
                                      ramification_plan const & plan, tower_certificate const & c);
/* the plan and genus a certificate record was computed from */
resolved_plan plan_from_record(json const & record);
void print_certificate(std::ostream & out, std::string const & name, int64_t genus,
                       ramification_plan const & plan, tower_certificate const & c);

struct injected_plan {
    std::string name;
    std::optional<std::vector<uint64_t>> location;
    tower_certificate certificate;
    bool dominated = false;     /* the top result's refined bound is at least this one's */
};

std::vector<injected_plan> check_injected(config_document const & doc, search_space const & space,
                                          search_result const & res, unsigned jobs = 1);
std::vector<json> search_records(search_space const & space, search_result const & res,
                                 std::vector<injected_plan> const & injected);
void print_search(std::ostream & out, search_space const & space, search_result const & res,
                  std::vector<injected_plan> const & injected);

json comparison_record(std::string const & name, method_comparison_input const & in,
                       method_comparison const & c);
void print_comparison(std::ostream & out, std::string const & name, method_comparison_input const & in,
                      method_comparison const & c);

std::string rational_text(rational const & r);

} // namespace cftower

#endif /* CFTOWER_REPORT_HPP_ */
