#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct run_result {
  int status = -1;
  std::string out;
};

run_result run(const std::string& args) {
  std::string cmd = std::string(DIALECTIC_BIN) + " " + args + " 2>&1";
  run_result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

}  // namespace

TEST(cli, validate_relations) {
  auto r = run("validate rel:2,2 --laws=cHc");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(cli, validate_model_file) {
  auto r = run("validate " + data("bool2.model") + " --laws=cHc");
  EXPECT_EQ(r.status, 0) << r.out;
}

TEST(cli, check_proof_logical_axiom) {
  auto r = run("check-proof " + data("lang.dlg") + " " + data("axiom.dpf"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "OK (1 node)\n");
}

TEST(cli, check_proof_cut) {
  auto r = run("check-proof " + data("lang.dlg") + " " + data("cut.dpf"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "OK (4 nodes)\n");
}

TEST(cli, check_proof_reports_failing_node) {
  auto r = run("check-proof " + data("lang.dlg") + " " + data("bad.dpf"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out.rfind("FAIL at root", 0), 0u) << r.out;
}

TEST(cli, datalog_transitive_closure) {
  auto r = run("datalog " + data("tc.dl"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("path(1,2)\npath(1,3)\npath(2,3)\n"), std::string::npos) << r.out;
  int paths = 0;
  for (std::size_t p = r.out.find("path("); p != std::string::npos; p = r.out.find("path(", p + 1)) ++paths;
  EXPECT_EQ(paths, 3);
}

TEST(cli, eval_in_structure) {
  auto r = run("eval " + data("lang.dlg") + " " + data("rel22.str") + " '(ent (ot (atom a) (atom a)) (id x))'");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("valid"), std::string::npos);
  auto w = run("eval " + data("lang.dlg") + " " + data("rel22.str") + " '(ent (atom a) (ot (atom a) (atom a)))'");
  EXPECT_EQ(w.status, 1) << w.out;
}

TEST(cli, prove_goal) {
  auto r = run("prove " + data("lang.dlg") + " '(orth (atom b) (dual b))'");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("logical axiom"), std::string::npos);
}

TEST(cli, laws_on_bool2) {
  auto r = run("laws bool2");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(cli, center_reflection_on_relations) {
  auto r = run("laws rel:2,2 --law=center-reflection");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("PASS center-reflection", 0), 0u) << r.out;
}

TEST(cli, tropical_laws) {
  auto r = run("--format=tsv laws trop:8 --law=dialectical-axioms,heyting-laws,center-reflection");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("PASS\tdialectical-axioms"), std::string::npos);
}

TEST(cli, law_list) {
  auto r = run("laws bool2 --list");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("flow-decomposition"), std::string::npos);
}

TEST(cli, output_is_deterministic) {
  auto a = run("--seed=5 --jobs=1 laws rel:2,2");
  auto b = run("--seed=5 --jobs=3 laws rel:2,2");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.status, b.status);
}

TEST(cli, center_and_fixpoint) {
  auto c = run("center rel:2,2");
  EXPECT_EQ(c.status, 0) << c.out;
  EXPECT_NE(c.out.find("{0.1|1.0}"), std::string::npos);
  auto f = run("fixpoint rel:2,1 '{0.1|1.0}:t0->t0' '{0.0|1.1}:t0->t0'");
  EXPECT_EQ(f.status, 0) << f.out;
}

TEST(cli, input_errors_exit_two) {
  EXPECT_EQ(run("validate nonsense:3").status, 2);
  EXPECT_EQ(run("check-proof " + data("lang.dlg") + " /nonexistent.dpf").status, 2);
  auto r = run("datalog " + data("axiom.dpf"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find(":1:"), std::string::npos) << r.out;
  EXPECT_EQ(run("laws rel:2,2 --law=no-such-law").status, 2);
}
