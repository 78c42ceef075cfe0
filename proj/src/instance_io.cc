// Copyright 2026 The BeQuP Authors
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

#include "bequp/instance_io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bequp {

Instance parse_instance_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("instance JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("link_p")) {
        throw std::invalid_argument("instance JSON: missing \"link_p\"");
    }
    const bool has_segments = doc.contains("segments");
    const bool has_incidence = doc.contains("incidence");
    if (has_segments == has_incidence) {
        throw std::invalid_argument("instance JSON: need exactly one of \"segments\" or \"incidence\"");
    }
    try {
        auto link_p = doc.at("link_p").get<std::vector<double>>();
        if (has_segments) {
            auto counts = doc.at("segments").get<std::vector<std::size_t>>();
            return Instance(Topology::segmented(counts), std::move(link_p));
        }
        auto rows = doc.at("incidence").get<std::vector<std::vector<int>>>();
        std::vector<std::vector<std::uint8_t>> bits;
        for (const auto &r : rows) {
            std::vector<std::uint8_t> b;
            for (int v : r) {
                if (v != 0 && v != 1) {
                    throw std::invalid_argument("instance JSON: incidence entries must be 0 or 1");
                }
                b.push_back(static_cast<std::uint8_t>(v));
            }
            bits.push_back(std::move(b));
        }
        return Instance(Topology::from_incidence(bits), std::move(link_p));
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("instance JSON: ") + e.what());
    }
}

Instance load_instance(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open instance file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance_json(buf.str());
}

std::string instance_to_json(const Instance &instance) {
    nlohmann::json doc;
    const Topology &t = instance.topology();
    if (t.segments()) {
        doc["segments"] = *t.segments();
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (PathId k : t.all_paths()) {
            auto bits = t.row_bits(k);
            rows.push_back(std::vector<int>(bits.begin(), bits.end()));
        }
        doc["incidence"] = rows;
    }
    doc["link_p"] = std::vector<double>(instance.link_p().begin(), instance.link_p().end());
    return doc.dump();
}

std::string format_gap_report(const Instance &instance, const GapReport &report) {
    std::ostringstream out;
    char buf[128];
    const Topology &t = instance.topology();
    out << "L=" << t.num_links() << " K=" << t.num_paths() << " rank=" << t.rank() << "\n";
    out << "best_path=" << report.best_path.value << " links=";
    for (LinkId l : t.links_of(report.best_path)) {
        out << l.value << ' ';
    }
    out << "\n";
    for (std::size_t l = 0; l < report.link_gaps.size(); ++l) {
        std::snprintf(buf, sizeof buf, "link %zu p=%.6f gap=%.6f\n", l, instance.link_p(LinkId(l)),
                      report.link_gaps[l]);
        out << buf;
    }
    for (std::size_t k = 0; k < report.path_gaps.size(); ++k) {
        std::snprintf(buf, sizeof buf, "path %zu F=%.6f gap=%.6f\n", k, transformed_fidelity(instance, PathId(k)),
                      report.path_gaps[k]);
        out << buf;
    }
    return out.str();
}

}  // namespace bequp
