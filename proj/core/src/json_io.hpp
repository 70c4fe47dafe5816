#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlslab/imethod.hpp"
#include "nlslab/morawetz.hpp"
#include "nlslab/scattering.hpp"

namespace nlslab::io {

using json = nlohmann::ordered_json;

/// Non-finite doubles become null.
[[nodiscard]] json number(double v);
[[nodiscard]] json numbers(const std::vector<double>& v);

[[nodiscard]] json to_json(const MonotonicityReport& r);
[[nodiscard]] json to_json(const ScatteringReport& r);
[[nodiscard]] json to_json(const IncrementSweep& s);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& j);
/// Two whitespace-separated columns with a '# x y' header.
void write_plot(const std::filesystem::path& path, const std::string& x_label,
                const std::string& y_label, const std::vector<double>& x,
                const std::vector<double>& y);

/// CSV schema of the almost-conservation sweep.
inline constexpr const char* kSweepCsvHeader =
    "N,lambda,E0,sup_E,increment,noise_floor,included_in_fit";
[[nodiscard]] std::string sweep_csv(const IncrementSweep& s);

[[nodiscard]] std::string format_double(double v);

}  // namespace nlslab::io
