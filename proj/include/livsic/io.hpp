#ifndef LIVSIC_IO_HPP
#define LIVSIC_IO_HPP

#include <memory>
#include <ostream>
#include <string>

#include "livsic/cocycle.hpp"
#include "livsic/cohomology.hpp"
#include "livsic/grid_function.hpp"
#include "livsic/interval_map.hpp"
#include "livsic/reachability.hpp"

namespace livsic {

/// Malformed or unreadable description file.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Map description from JSON: either the full branch listing
/// { "label", "lambda", "branches": [ { "domain": [l,r], "coeffs": [...] } ] }
/// or a shorthand { "type": "beta", "beta": b, "alpha": a } /
/// { "type": "counterexample", "c": c }.
MapDescription parse_map(const std::string& json_text);
MapDescription load_map(const std::string& path);
std::string map_to_json(const MapDescription& map);

/// Cocycle from JSON: { "type": "trig", "cos": [...], "sin": [...] },
/// { "type": "poly", "coeffs": [...] } or
/// { "type": "coboundary", "chi0": <cocycle spec> } (needs the map).
std::shared_ptr<const Cocycle> parse_cocycle(const std::string& json_text,
                                             const MapDescription* map = nullptr);
std::shared_ptr<const Cocycle> load_cocycle(const std::string& path,
                                            const MapDescription* map = nullptr);

/// CSV with header "x,value", x at cell midpoints, 17 significant digits.
void write_grid_csv(const GridFunction& f, std::ostream& os);
void write_grid_csv(const GridFunction& f, const std::string& path);
GridFunction read_grid_csv(const std::string& path);

std::string solution_diagnostics_json(const CocycleSolution& sol);
std::string qpartition_to_json(const QPartition& q);

void write_text(const std::string& path, const std::string& text);

} // namespace livsic

#endif
