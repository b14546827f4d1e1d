#include "bswet/scenario_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bswet {

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& message) {
    throw std::invalid_argument(name + ":" + std::to_string(line) + ": " + message);
}

std::string strip(const std::string& raw) {
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& name, int line, const std::string& token,
                    const std::string& field) {
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        fail(name, line, "field '" + field + "': cannot parse number from '" + token + "'");
    }
}

bool parse_bool(const std::string& name, int line, const std::string& token,
                const std::string& field) {
    if (token == "true" || token == "1") return true;
    if (token == "false" || token == "0") return false;
    fail(name, line, "field '" + field + "': expected true/false, got '" + token + "'");
}

}  // namespace

Scenario read_scenario(std::istream& in, const std::string& name) {
    Scenario scenario;
    bool in_ers = false;
    bool saw_noise = false;
    int line_no = 0;
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip(raw);
        if (line.empty()) continue;

        if (line == "[ers]") {
            if (in_ers) fail(name, line_no, "duplicate [ers] section");
            in_ers = true;
            continue;
        }

        if (!in_ers) {
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                fail(name, line_no, "expected 'key = value', got '" + line + "'");
            const std::string key = strip(line.substr(0, eq));
            const std::string value = strip(line.substr(eq + 1));
            if (value.empty()) fail(name, line_no, "field '" + key + "': empty value");

            if (key == "tx_antennas") {
                scenario.tx_antennas =
                    static_cast<int>(parse_number(name, line_no, value, key));
            } else if (key == "frame_symbols") {
                scenario.frame_symbols = parse_number(name, line_no, value, key);
            } else if (key == "average_power_watts") {
                scenario.average_power_watts = parse_number(name, line_no, value, key);
            } else if (key == "noise_power_watts") {
                scenario.noise_power_watts = parse_number(name, line_no, value, key);
                saw_noise = true;
            } else if (key == "noise_power_dbm") {
                scenario.noise_power_watts =
                    dbm_to_watts(parse_number(name, line_no, value, key));
                saw_noise = true;
            } else if (key == "harvest_efficiency") {
                scenario.harvest_efficiency = parse_number(name, line_no, value, key);
            } else if (key == "path_loss_ref_gain") {
                scenario.path_loss_model.reference_gain =
                    parse_number(name, line_no, value, key);
            } else if (key == "path_loss_exponent") {
                scenario.path_loss_model.exponent = parse_number(name, line_no, value, key);
            } else if (key == "rho_scaled_ce") {
                scenario.rho_scaled_ce = parse_bool(name, line_no, value, key);
            } else {
                fail(name, line_no, "unknown field '" + key + "'");
            }
            continue;
        }

        // ER table row: distance_m beta rho_re rho_im theta ('-' = default).
        std::istringstream row(line);
        std::vector<std::string> tokens;
        std::string token;
        while (row >> token) tokens.push_back(token);
        if (tokens.size() != 5)
            fail(name, line_no,
                 "ER row needs 5 columns (distance_m beta rho_re rho_im theta), got " +
                     std::to_string(tokens.size()));
        ErProfile er;
        er.distance_m = parse_number(name, line_no, tokens[0], "distance_m");
        er.beta = tokens[1] == "-" ? 0.0 : parse_number(name, line_no, tokens[1], "beta");
        const double rho_re =
            tokens[2] == "-" ? 1.0 : parse_number(name, line_no, tokens[2], "rho_re");
        const double rho_im =
            tokens[3] == "-" ? 0.0 : parse_number(name, line_no, tokens[3], "rho_im");
        er.rho = {rho_re, rho_im};
        er.theta = tokens[4] == "-" ? -1.0 : parse_number(name, line_no, tokens[4], "theta");
        scenario.ers.push_back(er);
    }

    if (!in_ers) fail(name, line_no, "missing [ers] section");
    if (scenario.ers.empty()) fail(name, line_no, "the [ers] section has no rows");
    if (!saw_noise)
        fail(name, line_no, "missing field 'noise_power_watts' (or 'noise_power_dbm')");
    scenario.apply_defaults();
    try {
        scenario.validate();
    } catch (const std::invalid_argument& error) {
        throw std::invalid_argument(name + ": " + error.what());
    }
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file '" + path + "'");
    return read_scenario(in, path);
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char byte = 0;
    while (in.get(byte)) {
        hash ^= static_cast<unsigned char>(byte);
        hash *= 0x100000001b3ull;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

}  // namespace bswet
