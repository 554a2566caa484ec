#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "lpls/cmat_io.hpp"
#include "lpls/ensembles.hpp"

using namespace lpls;

namespace {
CMatrix roundtrip(const CMatrix& a) {
    std::ostringstream os;
    write_cmat(os, a);
    std::istringstream is(os.str());
    return read_cmat(is);
}
} // namespace

TEST(CmatIo, BitwiseRoundTrip) {
    RngStream rng(2, 0);
    CMatrix a(64, 12);
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 12; ++j) a(i, j) = complex_gaussian(rng);
    a(0, 0) = CScalar(-0.0, 0.0);
    a(1, 0) = CScalar(1e-300, -1e300);
    a(2, 0) = CScalar(std::ldexp(1.0, -1040), 0.0); // subnormal
    CMatrix b = roundtrip(a);
    ASSERT_TRUE(a.same_shape(b));
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 12; ++j) {
            ASSERT_EQ(std::memcmp(&a(i, j), &b(i, j), sizeof(CScalar)), 0)
                << "entry " << i << "," << j;
        }
}

TEST(CmatIo, ScalarFileAndComments) {
    std::istringstream is("# generated for a test\n# second comment\n%%CMAT 1 1\n1.0 0.0\n");
    CMatrix a = read_cmat(is);
    EXPECT_EQ(a.rows(), 1);
    EXPECT_EQ(a.cols(), 1);
    EXPECT_EQ(a(0, 0), CScalar(1, 0));
}

TEST(CmatIo, TrailingBlankLinesTolerated) {
    std::istringstream is("%%CMAT 1 2\n1 2\n3 4\n\n# done\n");
    CMatrix a = read_cmat(is);
    EXPECT_EQ(a(0, 1), CScalar(3, 4));
}

TEST(CmatIo, MissingValuesNameTheLine) {
    std::istringstream is("%%CMAT 2 2\n1 0\n2 0\n3 0\n");
    try {
        read_cmat(is);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("3 of 4"), std::string::npos) << e.what();
    }
}

TEST(CmatIo, MalformedInputs) {
    {
        std::istringstream is("%%WRONG 2 2\n");
        EXPECT_THROW(read_cmat(is), ParseError);
    }
    {
        std::istringstream is("%%CMAT 2\n");
        EXPECT_THROW(read_cmat(is), ParseError);
    }
    {
        std::istringstream is("%%CMAT 0 2\n");
        EXPECT_THROW(read_cmat(is), ParseError);
    }
    {
        std::istringstream is("%%CMAT 1 1\n1.0 banana\n");
        try {
            read_cmat(is);
            FAIL();
        } catch (const ParseError& e) {
            EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
            EXPECT_NE(std::string(e.what()).find("banana"), std::string::npos);
        }
    }
    {
        std::istringstream is("%%CMAT 1 1\n1.0 2.0 3.0\n");
        EXPECT_THROW(read_cmat(is), ParseError);
    }
    {
        std::istringstream is("%%CMAT 1 1\n1.0 2.0\nleftover 1\n");
        EXPECT_THROW(read_cmat(is), ParseError);
    }
    EXPECT_THROW(read_cmat("/nonexistent/path.cmat"), ParseError);
}
