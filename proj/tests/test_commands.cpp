#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <x0/commands.hpp>

#include "known_models.hpp"

using namespace x0;
namespace fs = std::filesystem;

namespace
{

class Commands : public ::testing::Test
{
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("x0model-cmd-" + std::to_string(::getpid()) + "-" +
                std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    cli::Context ctx(bool json = false, bool use_cache = true)
    {
        out_.str("");
        err_.str("");
        return cli::Context{dir_, use_cache, json, out_, err_};
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

std::string without_timestamp(std::string s)
{
    const auto pos = s.find("\"timestamp\"");
    if (pos != std::string::npos) {
        s.erase(pos, s.find('\n', pos) - pos);
    }
    return s;
}

} // namespace

TEST_F(Commands, ComputePrintsPolynomialAndCaches)
{
    EXPECT_EQ(cli::cmd_compute(ctx(), 2), cli::kOk);
    EXPECT_EQ(out_.str(), std::string(test::kP2) + "\n");
    EXPECT_NE(err_.str().find("source=computed"), std::string::npos) << err_.str();
    EXPECT_NE(err_.str().find("bidegree=(1,3) psi=3 terms=5"), std::string::npos) << err_.str();
    EXPECT_TRUE(fs::exists(dir_ / "P_2.json"));

    const std::string first_file = [&] {
        std::ifstream in(dir_ / "P_2.json");
        return std::string(std::istreambuf_iterator<char>(in), {});
    }();
    EXPECT_EQ(cli::cmd_compute(ctx(), 2), cli::kOk);
    EXPECT_EQ(out_.str(), std::string(test::kP2) + "\n");
    EXPECT_NE(err_.str().find("source=cache"), std::string::npos) << err_.str();
    std::ifstream in(dir_ / "P_2.json");
    EXPECT_EQ(std::string(std::istreambuf_iterator<char>(in), {}), first_file);
}

TEST_F(Commands, ComputeLevelThree)
{
    EXPECT_EQ(cli::cmd_compute(ctx(), 3), cli::kOk);
    const BivariatePoly P = BivariatePoly::parse(3, out_.str());
    EXPECT_EQ(P.term_count(), 8u);
    EXPECT_EQ(P.y_degree(), 4);
    EXPECT_EQ(P, BivariatePoly::parse(3, test::kP3));
}

TEST_F(Commands, ComputeWithoutCacheWritesNothing)
{
    EXPECT_EQ(cli::cmd_compute(ctx(false, false), 2), cli::kOk);
    EXPECT_FALSE(fs::exists(dir_ / "P_2.json"));
}

TEST_F(Commands, JsonOutputStableApartFromTimestamp)
{
    EXPECT_EQ(cli::cmd_compute(ctx(true, false), 3), cli::kOk);
    const std::string first = out_.str();
    EXPECT_EQ(cli::cmd_compute(ctx(true, false), 3), cli::kOk);
    EXPECT_EQ(without_timestamp(out_.str()), without_timestamp(first));
    EXPECT_EQ(parse_record(first).to_poly(), BivariatePoly::parse(3, test::kP3));
}

TEST_F(Commands, BadArguments)
{
    EXPECT_EQ(cli::cmd_compute(ctx(), 1), cli::kBadArguments);
    EXPECT_EQ(cli::cmd_compute(ctx(), 2, -1), cli::kBadArguments);
    EXPECT_EQ(cli::cmd_verify(ctx(), 0), cli::kBadArguments);
    EXPECT_EQ(cli::cmd_verify(ctx(), 2, -5), cli::kBadArguments);
    EXPECT_EQ(cli::cmd_divisors(ctx(), 1), cli::kBadArguments);
    EXPECT_EQ(cli::cmd_invariants(ctx(), -7), cli::kBadArguments);
    EXPECT_EQ(cli::cmd_certificate(ctx(), 1), cli::kBadArguments);
    EXPECT_EQ(cli::cmd_height(ctx(), 1), cli::kBadArguments);
}

TEST_F(Commands, VerifySucceeds)
{
    EXPECT_EQ(cli::cmd_verify(ctx(), 2, 10), cli::kOk);
    EXPECT_NE(out_.str().find("N=2 verified=true"), std::string::npos) << out_.str();
    EXPECT_EQ(cli::cmd_verify(ctx(), 4, 100), cli::kOk);
    EXPECT_NE(out_.str().find("verified=true"), std::string::npos);
}

TEST_F(Commands, VerifyReportsResidualForEditedCache)
{
    ASSERT_EQ(cli::cmd_compute(ctx(), 2), cli::kOk);
    const fs::path file = dir_ / "P_2.json";
    std::ifstream in(file);
    std::string text(std::istreambuf_iterator<char>(in), {});
    in.close();
    const auto pos = text.find("\"768\"");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 5, "\"769\"");
    std::ofstream(file) << text;

    EXPECT_EQ(cli::cmd_verify(ctx(), 2, 10), cli::kVerifyFailed);
    EXPECT_NE(out_.str().find("verified=false"), std::string::npos) << out_.str();
    EXPECT_NE(out_.str().find("first nonzero residual: coefficient of q^1 is 1"), std::string::npos) << out_.str();
}

TEST_F(Commands, ComputeRecoversFromCorruptOrWrongCache)
{
    std::ofstream(dir_ / "P_2.json") << "garbage";
    EXPECT_EQ(cli::cmd_compute(ctx(), 2), cli::kOk);
    EXPECT_NE(err_.str().find("warning: corrupt cache record"), std::string::npos) << err_.str();
    EXPECT_EQ(out_.str(), std::string(test::kP2) + "\n");
    EXPECT_NO_THROW(parse_record([&] {
        std::ifstream in(dir_ / "P_2.json");
        return std::string(std::istreambuf_iterator<char>(in), {});
    }()));

    // A well-formed record that fails verification is also replaced.
    RecordCache cache(dir_);
    auto rec = *cache.load(2);
    rec.terms.back().c = 2;
    cache.store(rec);
    EXPECT_EQ(cli::cmd_compute(ctx(), 2), cli::kOk);
    EXPECT_NE(err_.str().find("failed verification"), std::string::npos) << err_.str();
    EXPECT_EQ(out_.str(), std::string(test::kP2) + "\n");
}

TEST_F(Commands, Divisors)
{
    EXPECT_EQ(cli::cmd_divisors(ctx(), 4), cli::kOk);
    std::istringstream lines(out_.str());
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        long d = 0;
        if (fields >> d) {
            ++rows;
        }
    }
    EXPECT_EQ(rows, 3);
    EXPECT_NE(out_.str().find("deg div_inf(Delta(N.)/Delta)=3"), std::string::npos) << out_.str();

    EXPECT_EQ(cli::cmd_divisors(ctx(true), 6), cli::kOk);
    const auto j = nlohmann::json::parse(out_.str());
    EXPECT_EQ(j.at("cusp_classes").size(), 4u);
    EXPECT_EQ(j.at("degree_f"), 6);
}

TEST_F(Commands, Invariants)
{
    EXPECT_EQ(cli::cmd_invariants(ctx(), 11), cli::kOk);
    EXPECT_NE(out_.str().find("genus=1"), std::string::npos);
    EXPECT_NE(out_.str().find("dim_M12=12"), std::string::npos);
    EXPECT_EQ(cli::cmd_invariants(ctx(true), 2), cli::kOk);
    const auto j = nlohmann::json::parse(out_.str());
    EXPECT_EQ(j.at("deg_CN"), 3);
}

TEST_F(Commands, Certificate)
{
    EXPECT_EQ(cli::cmd_certificate(ctx(), 5), cli::kOk);
    EXPECT_EQ(out_.str(), "d(f1)=6 d(f2)=19 gcd=1 birational=true\n");
    EXPECT_EQ(cli::cmd_certificate(ctx(true), 12), cli::kOk);
    const auto j = nlohmann::json::parse(out_.str());
    EXPECT_EQ(j.at("d_f2"), 241);
    EXPECT_EQ(j.at("birational"), true);
}

TEST_F(Commands, Height)
{
    EXPECT_EQ(cli::cmd_height(ctx(), 2), cli::kOk);
    EXPECT_NE(out_.str().find("ln_height=16.6355"), std::string::npos) << out_.str();
    EXPECT_NE(out_.str().find("within_bound=true"), std::string::npos) << out_.str();
    EXPECT_EQ(cli::cmd_height(ctx(true), 4), cli::kOk);
    const auto j = nlohmann::json::parse(out_.str());
    EXPECT_FALSE(j.contains("prime_bound"));
}
