#pragma once

// JSON and CSV serialization shared by the CLI and the tests.

#include "ismq/bounds.hpp"
#include "ismq/dims.hpp"
#include "ismq/partition.hpp"
#include "ismq/quantizer.hpp"
#include "ismq/system.hpp"

#include <json.hpp>

#include <span>
#include <string>

namespace ismq {

using Json = nlohmann::ordered_json;

// Fields outer_maps [{scale, offset}], outer_probs (p_0 first), inner_maps,
// inner_probs, open_set {lo, hi}. Every number is an exact rational string
// or a JSON integer; floating literals are rejected.
CondensationSystem system_from_json(const Json& j);
CondensationSystem load_system(const std::string& path);
Json system_to_json(const CondensationSystem& sys);

Json word_json(const Word& w);
Json rational_json(const Rational& q);  // {"exact": "a/b", "value": double}
Json level_json(const Level& x);
Json interval_json(const Interval& I);

Json to_json(const IoscReport& rep);
Json to_json(const DimResult& d);
Json to_json(const R0Result& r0);
Json to_json(const GrowthConstants& g);
Json to_json(const SeparationData& m);
Json bundle_json(const PartitionBundle& b);

struct BoundsRow {
    unsigned k = 0;
    std::size_t phi = 0;
    UpperBound upper;
    LowerSum lower;
    EnergyReport energy;
    SeparationData markers;
    Rational delta_used;
    SeparationReport separation;
    double r = 0;
    double xi = 0;
};

Json bounds_json(const BoundsRow& row);

Json error_json(const std::string& code, const std::string& message);

// shortest round-trip decimal form
std::string format_double(double x);

std::string values_csv(const std::string& header, std::span<const double> values);

struct PartitionRow {
    unsigned k = 0;
    std::size_t N_kr = 0;
    std::size_t phi = 0;
    std::size_t l1 = 0;
    std::size_t l2 = 0;
    long double I_k = 0;
};

std::string partition_csv(std::span<const PartitionRow> rows);
std::string estimate_csv(std::span<const ErrorEstimate> rows);
std::string fit_csv(const DimensionFit& fit);
Json to_json(const DimensionFit& fit);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace ismq
