// Copyright 2026 The TQSf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "tqsf/experiment.h"

namespace tqsf {

using nlohmann::ordered_json;

namespace {

std::string_view role_name(RegisterRole role) {
    switch (role) {
        case RegisterRole::kAzimuthal:
            return "azimuthal";
        case RegisterRole::kTotalSpin:
            return "total_spin";
        case RegisterRole::kPrefixSpin:
            return "prefix_spin";
        case RegisterRole::kCoupling:
            return "coupling";
        case RegisterRole::kStep:
            return "step";
    }
    return "?";
}

std::string_view mode_name(EvolutionMode mode) { return mode == EvolutionMode::kExact ? "exact" : "trotter"; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

}  // namespace

ordered_json layout_to_json(const RegisterLayout& layout) {
    ordered_json j;
    j["method"] = method_name(layout.method);
    j["n"] = layout.n;
    j["total_qubits"] = layout.total_qubits();
    j["bit_order"] =
        "qubit 0 is the least-significant bit; each register bitstring is written most-significant qubit first; "
        "joint bitstrings list registers in the order given here";
    j["system"] = layout.system;
    ordered_json regs = ordered_json::array();
    for (const Register& r : layout.registers) {
        ordered_json reg;
        reg["name"] = r.name;
        reg["role"] = role_name(r.role);
        reg["prefix"] = r.prefix;
        reg["size"] = r.qubits.size();
        reg["qubits"] = r.qubits;
        regs.push_back(std::move(reg));
    }
    j["registers"] = std::move(regs);
    return j;
}

std::string layout_to_text(const RegisterLayout& layout) {
    std::ostringstream out;
    out << "method: " << method_name(layout.method) << "\n";
    out << "n: " << layout.n << "\n";
    out << "total qubits: " << layout.total_qubits() << "\n";
    out << std::left << std::setw(10) << "register" << std::setw(13) << "role" << std::setw(6) << "size"
        << "qubits (least-significant first)\n";
    auto qubit_list = [](const std::vector<int>& qs) {
        std::string s;
        for (std::size_t k = 0; k < qs.size(); ++k) {
            s += (k ? " " : "") + std::to_string(qs[k]);
        }
        return s;
    };
    out << std::setw(10) << "system" << std::setw(13) << "-" << std::setw(6) << layout.system.size()
        << qubit_list(layout.system) << "\n";
    for (const Register& r : layout.registers) {
        out << std::setw(10) << r.name << std::setw(13) << role_name(r.role) << std::setw(6) << r.qubits.size()
            << qubit_list(r.qubits) << "\n";
    }
    out << "bitstrings: registers in the order above, each most-significant qubit first\n";
    return out.str();
}

ordered_json to_json(const ResultDocument& doc) {
    const ExperimentConfig& c = doc.config;
    ordered_json j;
    j["schema"] = kResultSchema;

    ordered_json config;
    config["n"] = c.n;
    config["state"] = c.state;
    config["method"] = method_name(c.method);
    config["mode"] = mode_name(c.mode);
    config["trotter_steps"] = c.trotter_steps;
    config["shots"] = c.shots;
    config["seed"] = c.seed;
    config["coupling_bound"] = c.coupling_bound == CouplingRegisterBound::kInjective ? "injective" : "literal";
    j["config"] = std::move(config);
    j["layout"] = layout_to_json(doc.layout);

    ordered_json outcomes = ordered_json::array();
    double total_probability = 0.0;
    std::uint64_t total_count = 0;
    for (const OutcomeRow& row : doc.outcomes) {
        ordered_json o;
        o["label"] = row.label;
        if (row.spin) {
            o["spin"] = {{"two_s", row.spin->two_s},
                         {"two_m", row.spin->two_m},
                         {"S", format_half_integer(row.spin->two_s)},
                         {"M", format_half_integer(row.spin->two_m)}};
        } else {
            o["spin"] = nullptr;
        }
        if (row.path) {
            o["path"] = {{"bits", row.path->step_bits()},
                         {"bits_right_to_left", path_bits_right_to_left(*row.path)},
                         {"two_s_sequence", row.path->two_s_sequence},
                         {"final_S", format_half_integer(row.path->final_two_s())}};
        } else {
            o["path"] = nullptr;
        }
        ordered_json raw = ordered_json::array();
        for (const RegisterReading& r : row.raw_bits) {
            raw.push_back({{"register", r.name}, {"bits", r.bits}});
        }
        o["raw_bits"] = std::move(raw);
        o["probability"] = row.probability;
        if (row.count) {
            o["count"] = *row.count;
            total_count += *row.count;
        } else {
            o["count"] = nullptr;
        }
        total_probability += row.probability;
        outcomes.push_back(std::move(o));
    }
    j["outcomes"] = std::move(outcomes);
    j["totals"] = {{"probability", total_probability}, {"counts", total_count}};
    j["warnings"] = doc.warnings;
    j["metadata"] = {{"tool", "tqsf"}, {"version", kToolVersion}, {"timestamp", doc.timestamp}, {"seed", c.seed}};
    return j;
}

std::string to_csv(const ResultDocument& doc) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "label,probability,count\n";
    for (const OutcomeRow& row : doc.outcomes) {
        out << csv_field(row.label) << ',' << row.probability << ',';
        if (row.count) {
            out << *row.count;
        }
        out << '\n';
    }
    return out.str();
}

std::string to_svg(const ResultDocument& doc) {
    const std::size_t bars = doc.outcomes.size();
    const double bar_width = 28.0;
    const double gap = 12.0;
    const double left = 60.0;
    const double top = 30.0;
    const double plot_height = 240.0;
    const double label_space = 170.0;
    const double width = left + static_cast<double>(bars) * (bar_width + gap) + 40.0;
    const double height = top + plot_height + label_space;

    std::uint64_t shots = 0;
    for (const OutcomeRow& r : doc.outcomes) {
        shots += r.count.value_or(0);
    }
    double peak = 0.0;
    for (const OutcomeRow& r : doc.outcomes) {
        peak = std::max(peak, r.probability);
        if (shots > 0) {
            peak = std::max(peak, static_cast<double>(r.count.value_or(0)) / static_cast<double>(shots));
        }
    }
    if (peak <= 0.0) {
        peak = 1.0;
    }

    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << left << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">method "
        << method_name(doc.config.method) << ", n=" << doc.config.n << ", state " << xml_escape(doc.config.state)
        << (shots > 0 ? ", bars: exact, dots: sampled" : "") << "</text>\n";
    const double base = top + plot_height;
    out << "<line x1=\"" << left << "\" y1=\"" << base << "\" x2=\"" << width - 20 << "\" y2=\"" << base
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << base
        << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double value = peak * tick / 4.0;
        const double y = base - plot_height * tick / 4.0;
        out << "<text x=\"" << left - 6 << "\" y=\"" << y + 4
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << std::setprecision(3) << value
            << std::setprecision(2) << "</text>\n";
    }
    for (std::size_t k = 0; k < bars; ++k) {
        const OutcomeRow& r = doc.outcomes[k];
        const double x = left + gap + static_cast<double>(k) * (bar_width + gap);
        const double h = plot_height * r.probability / peak;
        out << "<rect x=\"" << x << "\" y=\"" << base - h << "\" width=\"" << bar_width << "\" height=\"" << h
            << "\" fill=\"steelblue\"/>\n";
        if (shots > 0) {
            const double freq = static_cast<double>(r.count.value_or(0)) / static_cast<double>(shots);
            out << "<circle cx=\"" << x + bar_width / 2 << "\" cy=\"" << base - plot_height * freq / peak
                << "\" r=\"3\" fill=\"darkorange\"/>\n";
        }
        out << "<text transform=\"translate(" << x + bar_width / 2 << "," << base + 8
            << ") rotate(60)\" font-family=\"sans-serif\" font-size=\"10\">" << xml_escape(r.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace tqsf
