#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "halfspace/experiments.hpp"
#include "halfspace/norms.hpp"
#include "halfspace/selftest.hpp"

namespace halfspace {

/// Keys keep insertion order so serialized reports are stable.
using Json = nlohmann::ordered_json;

std::string version();

Json to_json(const GridSpec& grid);
Json to_json(const DyadicBank& bank);
Json to_json(const LinearFit& fit);
Json to_json(const SpaceSpec& spec);
Json to_json(const NormReport& report);
Json to_json(const VerdictDetail& detail);
Json to_json(const RatioReport& report);
Json to_json(const SingularityProfile& profile);
Json to_json(const BlockFloorReport& report);
Json to_json(const EndpointGrowth& growth);
Json to_json(const SelftestReport& report);

/// Fields every report carries.
struct ReportHeader {
    std::string command;
    GridSpec grid;
    DyadicBank bank;
    std::uint64_t seed = 0;
    /// Left empty unless timing was requested; a clock reading would break byte-identical reruns.
    std::optional<double> wall_time;
};

Json make_report(const ReportHeader& header, Json config, Json result);

/// Two-space indented JSON with a trailing newline.
std::string serialize(const Json& report);

void write_ratio_csv(std::ostream& out, const RatioReport& report);
void write_blocks_csv(std::ostream& out, const BlockFloorReport& report);
void write_profile_csv(std::ostream& out, const SingularityProfile& profile);
/// (x, G(x)) for the limiting block shape on [0, x_max].
void write_limit_csv(std::ostream& out, double x_max, std::size_t samples);

void print_table(std::ostream& out, const NormReport& report);
void print_table(std::ostream& out, const RatioReport& report);
void print_table(std::ostream& out, const SingularityProfile& profile);
void print_table(std::ostream& out, const BlockFloorReport& report);
void print_table(std::ostream& out, const EndpointGrowth& growth);
void print_table(std::ostream& out, const SelftestReport& report);

}  // namespace halfspace
