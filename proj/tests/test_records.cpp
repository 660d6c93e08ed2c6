#include <gtest/gtest.h>

#include <sstream>

#include "canimm/records.hpp"

using namespace canimm;

namespace {

std::string text_of(const RunRecord& run) {
  std::ostringstream os;
  run.write(os);
  return os.str();
}

RunRecord reread(const RunRecord& run) {
  std::istringstream is(text_of(run));
  return RunRecord::read(is);
}

BuildConfig small(const std::string& name) {
  BuildConfig c;
  c.construction = name;
  if (name == "delta2") c.stages = 500, c.markers = 16;
  if (name == "bci" || name == "ci-not-hi") c.stages = 200;
  if (name == "ci-hi" || name == "effectivize") c.stages = 16;
  if (name == "hi-not-ci") c.blocks = 6;
  if (name == "generic") c.schedule = "thin:0,thin:3,avoid:3";
  return c;
}

bool any_failed(const std::vector<Verdict>& vs) {
  for (const auto& v : vs) {
    if (v.failed()) return true;
  }
  return false;
}

}  // namespace

TEST(RunRecords, EveryConstructionRoundTripsAndIsDeterministic) {
  for (const auto& name : construction_names()) {
    const auto a = build_run(small(name));
    const auto b = build_run(small(name));
    EXPECT_EQ(text_of(a), text_of(b)) << name;
    const auto back = reread(a);
    EXPECT_TRUE(back == a) << name;
    EXPECT_EQ(text_of(back), text_of(a)) << name;
    EXPECT_FALSE(a.claims.empty()) << name;
  }
}

TEST(RunRecords, ChecksPassExceptTheHyperimmuneCounterexample) {
  for (const auto& name : construction_names()) {
    const auto run = reread(build_run(small(name)));
    const auto verdicts = check_run(run, "all");
    ASSERT_FALSE(verdicts.empty()) << name;
    if (name == "hi-not-ci") {
      EXPECT_TRUE(any_failed(check_run(run, "immunity"))) << name;
      EXPECT_FALSE(any_failed(check_run(run, "domination"))) << name;
    } else {
      for (const auto& v : verdicts) EXPECT_FALSE(v.failed()) << name << " " << v.check;
    }
  }
}

TEST(RunRecords, SuitesSelectClaimKinds) {
  const auto run = build_run(small("delta2"));
  for (const auto& v : check_run(run, "immunity")) EXPECT_EQ(v.check, "immunity");
  for (const auto& v : check_run(run, "replay")) EXPECT_EQ(v.check, "replay");
  EXPECT_TRUE(check_run(run, "effective").empty());
  EXPECT_THROW(check_run(run, "nonsense"), std::invalid_argument);
}

TEST(RunRecords, TamperedPrefixIsCaught) {
  auto run = build_run(small("delta2"));
  auto& [name, prefix] = run.prefixes.front();
  std::string bits = prefix.bits();
  bits[bits.size() - 1] = bits.back() == '1' ? '0' : '1';
  prefix = SetPrefix::from_bits(bits);
  EXPECT_TRUE(any_failed(check_run(run, "replay")));
}

TEST(RunRecords, MalformedInputNamesTheLine) {
  std::istringstream is("construction\tdelta2\nbogus\tline\n");
  try {
    RunRecord::read(is);
    FAIL() << "expected a parse error";
  } catch (const std::runtime_error& ex) {
    EXPECT_NE(std::string(ex.what()).find("line 2"), std::string::npos);
  }
}

TEST(BuildConfigs, Rejections) {
  BuildConfig c;
  c.construction = "nope";
  EXPECT_THROW(build_run(c), std::invalid_argument);
  c = small("delta2");
  c.markers = 0;
  EXPECT_THROW(build_run(c), std::invalid_argument);
  c = small("generic");
  c.schedule = "thin:99";
  EXPECT_THROW(build_run(c), std::invalid_argument);
}

TEST(Schedules, Tokens) {
  const auto pool = default_pool();
  EXPECT_EQ(parse_schedule("thin-all", pool).size(), pool.size());
  const auto s = parse_schedule("thin:2:8,avoid:4,size:3,grab:7", pool);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0].name, "thin");
  EXPECT_EQ(s[2].name, "size");
  EXPECT_EQ(s[3].name, "grab");
  EXPECT_TRUE(parse_schedule("", pool).empty());
  EXPECT_THROW(parse_schedule("avoid", pool), std::invalid_argument);
  EXPECT_THROW(parse_schedule("twist:1", pool), std::invalid_argument);
  EXPECT_THROW(parse_schedule("deh:5", pool), std::invalid_argument);
}

TEST(Schedules, GrabViolatesExtension) {
  auto c = small("generic");
  c.schedule = "thin:4,grab:1";
  try {
    build_run(c);
    FAIL() << "expected an extension violation";
  } catch (const ExtensionViolation& ex) {
    EXPECT_EQ(ex.step(), 2u);
  }
}

TEST(DefaultFunctions, Values) {
  const auto fns = default_functions();
  ASSERT_EQ(fns.size(), 3u);
  EXPECT_EQ(machine::eval_total(fns[0], {Natural(9)}), 9);
  EXPECT_EQ(machine::eval_total(fns[1], {Natural(9)}), 1);
  EXPECT_EQ(machine::eval_total(fns[2], {Natural(9)}), 4);
}
