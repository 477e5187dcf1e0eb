#include "meanrev/state_path.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

using namespace meanrev;

namespace {

std::string temp_file(const char* name) {
    return std::string(::testing::TempDir()) + name;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

}  // namespace

TEST(SimGrid, Accessors) {
    const SimGrid grid{0.0, 2.0, 8};
    EXPECT_DOUBLE_EQ(grid.dt(), 0.25);
    EXPECT_EQ(grid.n_points(), 9);
    EXPECT_NO_THROW(grid.validate());
}

TEST(SimGrid, RejectsDegenerateInputs) {
    EXPECT_THROW((SimGrid{0.0, 1.0, 0}).validate(), DomainError);
    EXPECT_THROW((SimGrid{0.0, -1.0, 10}).validate(), DomainError);
    EXPECT_THROW((SimGrid{0.0, 0.0, 10}).validate(), DomainError);
}

TEST(StatePath, TimesDerivedFromOrigin) {
    StatePath path{2.0, 0.5, Eigen::ArrayXd::LinSpaced(4, 1.0, 4.0)};
    EXPECT_EQ(path.size(), 4);
    EXPECT_DOUBLE_EQ(path.time(0), 2.0);
    EXPECT_DOUBLE_EQ(path.time(3), 3.5);
    const Eigen::ArrayXd t = path.times();
    ASSERT_EQ(t.size(), 4);
    EXPECT_DOUBLE_EQ(t[1], 2.5);
    EXPECT_DOUBLE_EQ(t[3], 3.5);
}

TEST(StatePathCsv, RoundTripIsBitExact) {
    StatePath path{0.0, 0.001, Eigen::ArrayXd(4)};
    path.values << 1.0 / 3.0, 0.1 + 0.2, -2.5e-17, 12345.678901234567;
    const std::string file = temp_file("roundtrip.csv");
    save_csv(path, file);
    const StatePath back = load_state_path_csv(file);
    ASSERT_EQ(back.size(), path.size());
    EXPECT_DOUBLE_EQ(back.t0, path.t0);
    EXPECT_DOUBLE_EQ(back.dt, path.dt);
    for (Eigen::Index i = 0; i < path.size(); ++i)
        EXPECT_EQ(back.values[i], path.values[i]) << "index " << i;
}

TEST(StatePathCsv, RejectsWrongHeader) {
    const std::string file = temp_file("badheader.csv");
    write_text(file, "time,value\n0,1\n1,2\n");
    EXPECT_THROW(load_state_path_csv(file), ParseError);
}

TEST(StatePathCsv, RejectsMalformedNumberWithLine) {
    const std::string file = temp_file("badnum.csv");
    write_text(file, "t,value\n0,1\n1,oops\n");
    try {
        load_state_path_csv(file);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 3u);
    }
}

TEST(StatePathCsv, RejectsNonUniformSpacing) {
    const std::string file = temp_file("nonuniform.csv");
    write_text(file, "t,value\n0,1\n1,2\n2.5,3\n");
    EXPECT_THROW(load_state_path_csv(file), ValidationError);
}

TEST(StatePathCsv, RejectsNonIncreasingTimes) {
    const std::string file = temp_file("descending.csv");
    write_text(file, "t,value\n1,1\n0,2\n");
    EXPECT_THROW(load_state_path_csv(file), ValidationError);
}

TEST(StatePathCsv, RejectsWrongFieldCount) {
    const std::string file = temp_file("fields.csv");
    write_text(file, "t,value\n0,1,9\n");
    EXPECT_THROW(load_state_path_csv(file), ParseError);
}

TEST(StatePathCsv, EmptyBodyIsInsufficient) {
    const std::string file = temp_file("emptybody.csv");
    write_text(file, "t,value\n");
    EXPECT_THROW(load_state_path_csv(file), InsufficientDataError);
}

TEST(StatePathCsv, MissingFileThrows) {
    EXPECT_THROW(load_state_path_csv(temp_file("does_not_exist.csv")), Error);
}
