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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "test_util.h"

namespace bequp {
namespace {

TEST(InstanceIo, ParsesSegments) {
    const Instance inst = parse_instance_json(R"({"segments": [2, 3], "link_p": [0.9, 0.8, 0.7, 0.6, 0.5]})");
    EXPECT_EQ(inst.num_links(), 5u);
    EXPECT_EQ(inst.num_paths(), 6u);
    ASSERT_TRUE(inst.topology().segments().has_value());
    EXPECT_EQ(inst.link_p(LinkId(4)), 0.5);
}

TEST(InstanceIo, ParsesIncidence) {
    const Instance inst = parse_instance_json(R"({"incidence": [[1, 1, 0], [0, 1, 1]], "link_p": [0.9, 0.8, 0.7]})");
    EXPECT_EQ(inst.num_paths(), 2u);
    EXPECT_FALSE(inst.topology().graph().has_value());
    EXPECT_TRUE(inst.topology().contains(PathId(1), LinkId(2)));
}

TEST(InstanceIo, RejectsMalformed) {
    for (const char *bad : {
             "not json",
             R"({"segments": [2]})",
             R"({"link_p": [0.9, 0.8]})",
             R"({"segments": [2], "incidence": [[1, 0], [0, 1]], "link_p": [0.9, 0.8]})",
             R"({"incidence": [[2, 0], [0, 1]], "link_p": [0.9, 0.8]})",
             R"({"segments": [2], "link_p": [0.9]})",
             R"({"segments": [2], "link_p": [0.9, 1.5]})",
             R"({"segments": [2], "link_p": [0.9, "x"]})",
         }) {
        EXPECT_THROW(parse_instance_json(bad), std::invalid_argument) << bad;
    }
    EXPECT_THROW(load_instance("/nonexistent/instance.json"), std::runtime_error);
}

TEST(InstanceIo, RoundTrip) {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const Instance inst = i % 2 ? testing::random_segmented_instance(rng) : testing::random_explicit_instance(rng);
        const Instance back = parse_instance_json(instance_to_json(inst));
        EXPECT_EQ(back.topology().incidence(), inst.topology().incidence());
        EXPECT_EQ(back.topology().segments(), inst.topology().segments());
        for (std::size_t l = 0; l < inst.num_links(); ++l) {
            EXPECT_EQ(back.link_p(LinkId(l)), inst.link_p(LinkId(l)));
        }
    }
}

TEST(InstanceIo, LoadsFile) {
    const auto path = std::filesystem::temp_directory_path() / "bequp_instance_io_test.json";
    {
        std::ofstream out(path);
        out << R"({"segments": [2], "link_p": [0.9, 0.8]})";
    }
    const Instance inst = load_instance(path);
    std::filesystem::remove(path);
    EXPECT_EQ(inst.num_paths(), 2u);
}

TEST(InstanceIo, GapReportText) {
    const Instance d = testing::diamond(0.9, 0.8);
    const std::string text = format_gap_report(d, compute_gaps(d));
    EXPECT_NE(text.find("L=2 K=2 rank=2"), std::string::npos);
    EXPECT_NE(text.find("best_path=0"), std::string::npos);
    EXPECT_NE(text.find("gap=0.117783"), std::string::npos);
}

}  // namespace
}  // namespace bequp
