#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcrain/errors.hpp"
#include "tcrain/grid_io.hpp"
#include "tcrain/projection.hpp"

namespace tcrain {
namespace {

constexpr const char* kTwoByTwo =
    "NCOLS 2\n"
    "NROWS 2\n"
    "XLLCORNER 0\n"
    "YLLCORNER 0\n"
    "CELLSIZE 1\n"
    "NODATA_VALUE -9999\n"
    "0 0\n"
    "0 0\n";

TEST(ReadAsciiGrid, ParsesZeroGrid) {
  const Grid g = read_ascii_grid(kTwoByTwo);
  EXPECT_EQ(g.ncols(), 2u);
  EXPECT_EQ(g.nrows(), 2u);
  EXPECT_EQ(g.nodata(), -9999.0);
  EXPECT_EQ(std::vector<double>(g.values().begin(), g.values().end()), (std::vector<double>{0, 0, 0, 0}));
  EXPECT_EQ(g.precision(), 6);
}

TEST(ReadAsciiGrid, HeaderKeysAreCaseInsensitive) {
  const Grid g = read_ascii_grid("ncols 3\nNRows 1\nxllcorner 60\nYllCorner 0\ncellsize 0.1\n1 2 3\n");
  EXPECT_EQ(g.ncols(), 3u);
  EXPECT_EQ(g.header().xll, 60.0);
  EXPECT_EQ(g.nodata(), kDefaultNodata);
  EXPECT_EQ(g(0, 2), 3.0);
}

TEST(ReadAsciiGrid, RowLengthMismatchNamesLine) {
  const std::string text =
      "NCOLS 2\nNROWS 2\nXLLCORNER 0\nYLLCORNER 0\nCELLSIZE 1\nNODATA_VALUE -9999\n1 2 3\n4 5 6\n";
  try {
    read_ascii_grid(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "row length mismatch at line 7");
    EXPECT_EQ(e.line(), 7u);
  }
}

TEST(ReadAsciiGrid, ValueCountMismatch) {
  const std::string text = "NCOLS 2\nNROWS 3\nXLLCORNER 0\nYLLCORNER 0\nCELLSIZE 1\n1 2\n3 4\n";
  try {
    read_ascii_grid(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("value count mismatch"), std::string::npos);
    EXPECT_EQ(e.line(), 8u);
  }
  EXPECT_THROW(read_ascii_grid("NCOLS 1\nNROWS 1\nXLLCORNER 0\nYLLCORNER 0\nCELLSIZE 1\n1\n2\n"), ParseError);
}

TEST(ReadAsciiGrid, NonNumericToken) {
  try {
    read_ascii_grid("NCOLS 2\nNROWS 1\nXLLCORNER 0\nYLLCORNER 0\nCELLSIZE 1\n1 abc\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
    EXPECT_NE(std::string(e.what()).find("non-numeric value 'abc'"), std::string::npos);
  }
}

TEST(ReadAsciiGrid, MalformedHeaderKey) {
  try {
    read_ascii_grid("NCOLS 2\nNROWS 1\nXLLCORNER 0\nYLLCORNER 0\nCELSIZE 1\n1 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
    EXPECT_NE(std::string(e.what()).find("malformed header key 'CELSIZE'"), std::string::npos);
  }
  EXPECT_THROW(read_ascii_grid("NCOLS 2\nNROWS 1\nXLLCORNER 0\nYLLCORNER 0\n1 2\n"), ParseError);
  EXPECT_THROW(read_ascii_grid("NCOLS -2\nNROWS 1\nXLLCORNER 0\nYLLCORNER 0\nCELLSIZE 1\n1 2\n"), ParseError);
}

TEST(ReadAsciiGrid, RejectsNegativePrecipitationAndBadExtent) {
  EXPECT_THROW(read_ascii_grid("NCOLS 2\nNROWS 1\nXLLCORNER 0\nYLLCORNER 0\nCELLSIZE 1\n1 -2\n"), ParseError);
  // Extends past the north pole.
  EXPECT_THROW(read_ascii_grid("NCOLS 1\nNROWS 2\nXLLCORNER 0\nYLLCORNER 89.5\nCELLSIZE 1\n1\n1\n"), ParseError);
  EXPECT_THROW(read_ascii_grid("NCOLS 1\nNROWS 1\nXLLCORNER 180\nYLLCORNER 0\nCELLSIZE 1\n1\n"), ParseError);
}

TEST(ReadAsciiGrid, AcceptsCrlfAndProjectionKey) {
  const Grid g = read_ascii_grid(
      "NCOLS 1\r\nNROWS 1\r\nXLLCORNER -500\r\nYLLCORNER 0\r\nCELLSIZE 10\r\nPROJECTION sinusoidal\r\n7\r\n");
  EXPECT_EQ(g.header().projection, Projection::Sinusoidal);
  EXPECT_EQ(g(0, 0), 7.0);
}

TEST(ReadAsciiGrid, ArabianSeaStudyGridGeometry) {
  // 0.1 degree cells over 60-100E, 0-40N.
  GridHeader h{400, 400, 60.0, 0.0, 0.1};
  const Grid g(h, 0.0);
  const Grid back = read_ascii_grid(write_ascii_grid(g));
  EXPECT_EQ(back.ncols(), 400u);
  EXPECT_EQ(back.nrows(), 400u);
  EXPECT_NEAR(back.header().east(), 100.0, 1e-9);
  EXPECT_NEAR(back.header().north(), 40.0, 1e-9);
}

TEST(WriteAsciiGrid, FormatsValuesAndNodata) {
  GridHeader h{1, 1, 0.0, 0.0, 1.0};
  Grid one(h, 3.14159);
  EXPECT_NE(write_ascii_grid(one).find("3.14159"), std::string::npos);

  GridHeader h2{2, 1, 0.0, 0.0, 1.0, -9999.0};
  Grid g(h2, 1.5);
  g(0, 1) = -9999.0;
  const std::string text = write_ascii_grid(g);
  EXPECT_NE(text.find("1.5 -9999\n"), std::string::npos);
  EXPECT_NE(text.find("PRECISION 6"), std::string::npos);
}

TEST(WriteAsciiGrid, RoundTripRandomGridsAtDeclaredPrecision) {
  std::mt19937_64 rng(20230615);
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_int_distribution<int> prec(3, 10);
  for (int trial = 0; trial < 100; ++trial) {
    Grid g = oracle::random_grid(rng, static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)), 0.2,
                                 250.0);
    g.set_precision(prec(rng));
    for (double& v : g.values()) {
      if (!g.is_nodata(v)) {
        v = round_significant(v, g.precision());
      }
    }
    const Grid back = read_ascii_grid(write_ascii_grid(g));
    ASSERT_EQ(back, g) << "trial " << trial;
  }
}

TEST(AccumulateDaily, ConstantRates) {
  GridHeader h{3, 2, 60.0, 0.0, 0.1};
  const std::vector<Grid> two{Grid(h, 2.0), Grid(h, 2.0)};
  const Grid total = accumulate_daily(two, 0.5);
  for (double v : total.values()) {
    EXPECT_DOUBLE_EQ(v, 2.0);
  }
  const std::vector<Grid> one{Grid(h, 1.25)};
  EXPECT_DOUBLE_EQ(accumulate_daily(one, 24.0)(1, 2), 30.0);
}

TEST(AccumulateDaily, MatchesPerCellLoopFor48HalfHours) {
  std::mt19937_64 rng(48);
  std::vector<Grid> rates;
  for (int i = 0; i < 48; ++i) {
    rates.push_back(oracle::random_grid(rng, 9, 11, 0.05, 20.0));
  }
  const Grid total = accumulate_daily(rates, 0.5);
  for (std::size_t i = 0; i < total.size(); ++i) {
    double sum = 0.0;
    bool any = false;
    for (const Grid& g : rates) {
      const double v = g.values()[i];
      if (v != g.nodata()) {
        sum += v * 0.5;
        any = true;
      }
    }
    if (!any) {
      EXPECT_TRUE(total.is_nodata(total.values()[i]));
    } else {
      EXPECT_TRUE(oracle::relative_close(total.values()[i], sum, 1e-12)) << i;
    }
  }
}

TEST(AccumulateDaily, PermutationInvariantAndNonNegative) {
  std::mt19937_64 rng(7);
  std::vector<Grid> rates;
  for (int i = 0; i < 12; ++i) {
    rates.push_back(oracle::random_grid(rng, 6, 6, 0.3, 50.0));
  }
  const Grid reference = accumulate_daily(rates, 0.5);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(rates.begin(), rates.end(), rng);
    EXPECT_EQ(accumulate_daily(rates, 0.5), reference);
  }
  for (double v : reference.values()) {
    EXPECT_TRUE(reference.is_nodata(v) || v >= 0.0);
  }
}

TEST(AccumulateDaily, NodataOnlyWhereEveryInputIsNodata) {
  GridHeader h{2, 1, 0.0, 0.0, 1.0};
  Grid a(h, 1.0);
  Grid b(h, 3.0);
  a(0, 0) = h.nodata;
  a(0, 1) = h.nodata;
  b(0, 1) = h.nodata;
  const std::vector<Grid> grids{a, b};
  const Grid total = accumulate_daily(grids, 1.0);
  EXPECT_DOUBLE_EQ(total(0, 0), 3.0);
  EXPECT_TRUE(total.is_nodata(0, 1));
}

TEST(AccumulateDaily, Errors) {
  EXPECT_THROW(accumulate_daily({}, 0.5), std::invalid_argument);
  GridHeader h{2, 2, 0.0, 0.0, 1.0};
  GridHeader shifted = h;
  shifted.xll = 1.0;
  const std::vector<Grid> mismatched{Grid(h, 0.0), Grid(shifted, 0.0)};
  EXPECT_THROW(accumulate_daily(mismatched, 0.5), GeoreferenceMismatch);
  const std::vector<Grid> ok{Grid(h, 0.0)};
  EXPECT_THROW(accumulate_daily(ok, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace tcrain
