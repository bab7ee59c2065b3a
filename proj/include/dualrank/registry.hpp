#pragma once

// String-addressable chart registry used by the CLI and the report tables.
//
//   twisted_cubic | conic | rnc<N> | trig<N>          curves
//   veronese | symmetroid | segre:m,n
//   torse:<curve>,l=<k>
//   cone:<base>[,l=<k>][,N=<N>]                      base: a curve, veronese or segre(m.n)
//   join:<curve>,<curve>[,N=<N>]
//   cone_segre:m,n[,l=<k>]
//
// Resolved charts are composed with a seeded orthogonal change of ambient
// coordinates so that sample points avoid coordinate-aligned coincidences.

#include "dualrank/catalogue.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dualrank {

/// Chart for `spec` in its raw coordinates. Throws InputError for unknown specs.
Chart resolve_raw(const std::string& spec);

/// Chart for `spec` composed with the seeded ambient rotation.
Chart resolve(const std::string& spec, std::uint64_t seed);

/// The ten catalogue varieties every theorem check runs over.
std::vector<std::string> catalogue_specs();

/// Table columns N, n, l, r, l*, n* evaluated for a concrete instance.
struct TableColumns {
    int N, n, l, r, l_star, n_star;
};

/// Concrete instantiation of one row of the dimension table.
struct TableInstance {
    int example_id;
    std::string name;     // X column
    std::string spec;
    std::string dual_name; // X* column; empty when the dual has no standard name
    TableColumns expected;
};

std::vector<TableInstance> table_instances();

} // namespace dualrank
