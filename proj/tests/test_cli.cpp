#include "commands.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using negamoran::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "negamoran");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EvalJson) {
  const Outcome o = call({"--s", "5", "--format", "json", "eval", "--system", "s", "--digits", "113(12)"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["value"]["exact"], "799/3000");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"--s", "3", "measure"}).code, 2);
  EXPECT_EQ(call({"--s", "5", "eval", "--system", "s", "--digits", "1x"}).code, 2);
  EXPECT_EQ(call({"--s", "5", "--u", "2", "cylinder", "--spec", "SnegPu:2"}).code, 2);
  EXPECT_EQ(call({"--s", "6", "--u", "2", "cover", "--n", "30"}).code, 2);
  EXPECT_EQ(call({"--s", "4", "--P", "1/2,1/2,1/2,1/2", "eval", "--system", "P", "--digits", "1"}).code, 2);
}

TEST(Cli, CylinderAndCover) {
  const Outcome c = call({"--s", "5", "--u", "2", "--format", "json", "cylinder", "--spec", "SnegPu:1,3,4"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("12122271/40625000"), std::string::npos);
  const Outcome v = call({"--s", "5", "--u", "2", "--format", "csv", "cover", "--n", "2"});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_EQ(std::count(v.out.begin(), v.out.end(), '\n'), 10);
}

TEST(Cli, VerifyIsDeterministic) {
  const std::vector<std::string> args{"--seed", "3", "verify", "--samples", "30"};
  const Outcome a = call(args);
  const Outcome b = call(args);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("summary:"), std::string::npos);
}
