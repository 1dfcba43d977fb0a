#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <unistd.h>

#include "cavdress/csv.hpp"
#include "cavdress/errors.hpp"

using namespace cavdress;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
    auto dir = fs::temp_directory_path() / ("cavdress_csv_" + std::string(name) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t entries(const fs::path& dir) {
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}));
}

} // namespace

TEST_CASE("format_double round-trips exactly") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 20000; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng) / 1);
        const auto s = format_double(x);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(back == x);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("format_double special values") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(std::numeric_limits<double>::denorm_min()) == "4.9406564584124654e-324");
}

TEST_CASE("csv_row joins fields") {
    CHECK(csv_row({"a", "b", "c"}) == "a,b,c");
    CHECK(csv_row(std::vector<std::string>{"x"}) == "x");
    CHECK(csv_row(std::vector<std::string>{}) == "");
}

TEST_CASE("atomic writer publishes only on commit") {
    const auto dir = scratch_dir("commit");
    const auto target = dir / "out.csv";
    {
        AtomicFileWriter w(target);
        w.stream() << "t,x\n0,1\n";
        CHECK_FALSE(fs::exists(target));
        w.commit();
    }
    std::ifstream in(target);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "t,x\n0,1\n");
    CHECK(entries(dir) == 1);
    fs::remove_all(dir);
}

TEST_CASE("abandoned writer leaves neither target nor temporary") {
    const auto dir = scratch_dir("abandon");
    const auto target = dir / "out.csv";
    {
        AtomicFileWriter w(target);
        w.stream() << "partial";
    }
    CHECK_FALSE(fs::exists(target));
    CHECK(entries(dir) == 0);

    // an existing file survives an abandoned rewrite untouched
    { std::ofstream(target) << "old"; }
    {
        AtomicFileWriter w(target);
        w.stream() << "new";
    }
    std::ifstream in(target);
    std::string content;
    in >> content;
    CHECK(content == "old");
    fs::remove_all(dir);
}

TEST_CASE("writer into a missing directory is an I/O error") {
    CHECK_THROWS_AS(AtomicFileWriter("/nonexistent-cavdress-dir/x.csv"), IoError);
}
