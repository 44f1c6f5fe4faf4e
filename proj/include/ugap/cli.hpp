#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ugap/balance.hpp"
#include "ugap/report.hpp"

namespace ugap::cli {

// Schema "ugap.sweep/1". `balance` is an inline object or a path relative to
// the config file.
struct SweepConfig {
    int eta_min = 1;
    int eta_max = 8;
    int samples_per_interval = 10;
    bool include_outside = true;
    std::int64_t s_max = 64;
    balance::BalanceParams params;
    std::optional<std::filesystem::path> out;
    io::Format format = io::Format::Csv;

    void validate() const;
};

SweepConfig sweep_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
SweepConfig load_sweep_config(const std::filesystem::path& path);

// Columns: phi_prime, eta, interval_lo, interval_hi, certified, verdict,
// witness_w, edge_log2, pen_log2.
io::Table phase_diagram(const SweepConfig& cfg);

// Parses a single integer or an inclusive range "a..b".
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s);

// Entry point shared by the binary and the tests. Errors are reported as a
// JSON object on `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ugap::cli
