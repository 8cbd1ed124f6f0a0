#ifndef BIELL_CENSUS_HPP
#define BIELL_CENSUS_HPP

#include "biell/autcheck.hpp"
#include "biell/bivar.hpp"

#include <string>
#include <vector>

namespace biell {

/// One reference claim adjudicated by a census run. Status is one of
/// "matched", "mismatched", "not-computed"; claims are never dropped.
struct Claim {
    std::string name, claimed, computed, status;
};

struct CensusReport {
    std::string example;
    std::vector<Claim> claims;
    std::vector<std::string> notes;

    void claim(const std::string& name, const std::string& claimed, const std::string& computed);
    void claim_int(const std::string& name, long claimed, long computed);
    void claim_true(const std::string& name, bool computed, const std::string& detail = "");
    void not_computed(const std::string& name, const std::string& claimed, const std::string& why);
    bool any_mismatch() const;
    std::string to_json() const;
    std::string summary() const;
};

/// Plane model of the tower z^2 + z = e over E: the y-resultant of the two
/// defining polynomials, content-normalized and scaled monic in its top term.
/// Variables: first = x, second = the Artin-Schreier variable.
BivarPoly eliminate_to_plane(const FFElem& e);

/// mu |-> mu^c relabelings with gcd(c, 2^m-1) = 1, applied to the reference
/// polynomial until it equals the computed one; reports the matching c or a
/// coefficient diff for the closest attempt.
struct GoldenMatch {
    bool matched = false;
    int c = 1;
    std::string diff;
};
GoldenMatch golden_match(const BivarPoly& computed, const BivarPoly& reference);
GoldenMatch golden_match(const Poly& computed, const Poly& reference);

/// Load "key value" golden files (field/vars/poly entries).
Poly load_golden_poly(const std::string& path);
BivarPoly load_golden_bivar(const std::string& path);
std::array<BivarPoly, 3> load_golden_map(const std::string& path, int& degree);

const std::string& default_golden_dir();
void set_default_golden_dir(const std::string& dir);

CensusReport census_61(bool alternative, uint64_t seed = 1);
CensusReport census_62();
CensusReport census_63(int q);
CensusReport census_64(int q);
CensusReport census_65();
CensusReport census_66q();

/// Dispatch by example id: 6.1a, 6.1b, 6.2, 6.3, 6.4, 6.5, 6.6q.
CensusReport run_census(const std::string& example, int q = 16, uint64_t seed = 1);

std::string main_family_report_json(const MainFamilyReport& rep);

} // namespace biell

#endif
