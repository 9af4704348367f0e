#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "pathvec/corpus.hpp"
#include "pathvec/errors.hpp"
#include "pathvec/vocab.hpp"

using namespace pathvec;

namespace {

SourceFile file(std::string path, std::string content, std::string label = "") {
  return SourceFile{std::move(path), std::move(label), std::move(content)};
}

const char* kAddSource =
    "int addOne(int x) {\n"
    "  int y = x + 1;\n"
    "  return y;\n"
    "}\n";

const char* kLoopSource =
    "void drain(int n) {\n"
    "  while (n > 0) {\n"
    "    n = n - 1;\n"
    "  }\n"
    "  sink(n);\n"
    "}\n";

std::vector<Sample> label_only(const std::vector<std::pair<std::string, int>>& spec) {
  std::vector<Sample> out;
  for (const auto& [label, n] : spec)
    for (int i = 0; i < n; ++i) out.push_back(Sample{label, {}});
  return out;
}

}  // namespace

TEST_CASE("label normalization splits case, separators and digits") {
  CHECK(normalize_label("openFile") == "open|file");
  CHECK(normalize_label("open_file") == "open|file");
  CHECK(normalize_label("HTTPServer") == "http|server");
  CHECK(normalize_label("HTTP_server2handler") == "http|server|2|handler");
  CHECK(normalize_label("toUTF8") == "to|utf|8");
  CHECK(normalize_label("x") == "x");
  CHECK(normalize_label("ABC") == "abc");
  CHECK(normalize_label("get2ndItem") == "get|2|nd|item");
}

TEST_CASE("label normalization is idempotent") {
  for (const char* raw : {"openFile", "HTTPServer", "parse_HTTP2Frame", "a_b_c9x"}) {
    std::string once = normalize_label(raw);
    CHECK(normalize_label(once) == once);
  }
}

TEST_CASE("labels without alphanumerics are rejected") {
  CHECK_THROWS_AS(normalize_label(""), EmptyLabel);
  CHECK_THROWS_AS(normalize_label("___"), EmptyLabel);
  CHECK_THROWS_AS(normalize_label("-+|"), EmptyLabel);
}

TEST_CASE("split_label returns the subtokens") {
  CHECK(split_label("open|file") == std::vector<std::string>{"open", "file"});
  CHECK(split_label("x") == std::vector<std::string>{"x"});
}

TEST_CASE("method samples carry normalized labels and masked names") {
  BuildReport report;
  CorpusOptions opts;
  auto samples = build_method_samples({file("a.c", std::string(kAddSource) + kLoopSource)},
                                      opts, report);
  REQUIRE(samples.size() == 2);
  CHECK(report.functions_seen == 2);
  CHECK(report.samples_kept == 2);
  CHECK(report.drops.empty());
  CHECK(samples[0].label == "add|one");
  CHECK(samples[1].label == "drain");

  // The declared name never leaks into contexts; the mask token does.
  bool saw_mask = false;
  for (const Sample& s : samples) {
    for (const auto& contexts : s.contexts) {
      CHECK(!contexts.empty());
      for (const PathContext& pc : contexts) {
        CHECK(pc.start_token.find("addone") == std::string::npos);
        CHECK(pc.start_token.find("drain") == std::string::npos);
        CHECK(pc.end_token.find("addone") == std::string::npos);
        CHECK(pc.end_token.find("drain") == std::string::npos);
        if (pc.start_token.find("method_name") != std::string::npos ||
            pc.end_token.find("method_name") != std::string::npos)
          saw_mask = true;
      }
    }
  }
  CHECK(saw_mask);
}

TEST_CASE("recursive call sites are masked too") {
  BuildReport report;
  auto samples = build_method_samples(
      {file("fib.c",
            "int fib(int n) {\n"
            "  if (n < 2) { return n; }\n"
            "  return fib(n - 1) + fib(n - 2);\n"
            "}\n")},
      CorpusOptions{}, report);
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].label == "fib");
  for (const auto& contexts : samples[0].contexts)
    for (const PathContext& pc : contexts) {
      CHECK(pc.start_token.find("fib") == std::string::npos);
      CHECK(pc.end_token.find("fib") == std::string::npos);
    }
}

TEST_CASE("sample tokens are already normalized") {
  BuildReport report;
  auto samples = build_method_samples({file("a.c", kLoopSource)}, CorpusOptions{}, report);
  REQUIRE(samples.size() == 1);
  for (const auto& contexts : samples[0].contexts)
    for (const PathContext& pc : contexts) {
      CHECK(pc.start_token == normalize_token(pc.start_token));
      CHECK(pc.end_token == normalize_token(pc.end_token));
    }
}

TEST_CASE("files that fail to parse are dropped with a reason") {
  BuildReport report;
  auto samples = build_method_samples(
      {file("bad.c", "void f(void) { goto out; }\n"), file("good.c", kAddSource)},
      CorpusOptions{}, report);
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].label == "add|one");
  REQUIRE(report.drops.size() == 1);
  CHECK(report.drops[0].file == "bad.c");
  CHECK(report.drops[0].function.empty());
  CHECK(report.drops[0].reason.find("goto") != std::string::npos);
}

TEST_CASE("functions whose CFG cannot reach the exit are dropped individually") {
  BuildReport report;
  auto samples = build_method_samples(
      {file("mix.c", std::string("void spin(void) { for (;;) { tick(); } }\n") +
                         kAddSource)},
      CorpusOptions{}, report);
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].label == "add|one");
  CHECK(report.functions_seen == 2);
  REQUIRE(report.drops.size() == 1);
  CHECK(report.drops[0].file == "mix.c");
  CHECK(report.drops[0].function == "spin");
  CHECK(report.drops[0].reason.find("END") != std::string::npos);
}

TEST_CASE("functions with a lone terminal have no AST paths and are dropped") {
  BuildReport report;
  auto samples =
      build_method_samples({file("empty.c", "void f(void) {}\n")}, CorpusOptions{}, report);
  CHECK(samples.empty());
  REQUIRE(report.drops.size() == 1);
  CHECK(report.drops[0].reason == "no AST paths");
}

TEST_CASE("pre-cap counts exceed post-cap counts when sampling kicks in") {
  CorpusOptions opts;
  opts.limits.max_ast = 5;
  BuildReport report;
  auto samples = build_method_samples({file("a.c", kLoopSource)}, opts, report);
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].contexts[0].size() == 5);
  CHECK(report.paths_before_caps[0] > report.paths_after_caps[0]);
  CHECK(report.paths_after_caps[0] == 5);
  CHECK(report.mean_before_caps(Rep::Ast) ==
        doctest::Approx(static_cast<double>(report.paths_before_caps[0])));
}

TEST_CASE("builds are invariant under the thread count") {
  std::vector<SourceFile> files;
  for (int i = 0; i < 7; ++i) {
    std::string name = "fn_" + std::to_string(i);
    std::string src = "int " + name + "(int a, int b) {\n" +
                      "  int s = " + std::to_string(i) + ";\n" +
                      "  while (a > 0) { s = s + b; a = a - 1; }\n" +
                      "  return s;\n" +
                      "}\n";
    files.push_back(file("f" + std::to_string(i) + ".c", src));
  }
  files.push_back(file("bad.c", "void g(void) { goto x; }\n"));

  CorpusOptions one;
  one.threads = 1;
  CorpusOptions four;
  four.threads = 4;
  BuildReport ra, rb;
  auto sa = build_method_samples(files, one, ra);
  auto sb = build_method_samples(files, four, rb);
  CHECK(sa == sb);
  CHECK(ra.functions_seen == rb.functions_seen);
  CHECK(ra.drops.size() == rb.drops.size());
  CHECK(ra.paths_before_caps == rb.paths_before_caps);
  CHECK(ra.paths_after_caps == rb.paths_after_caps);
}

TEST_CASE("file-level samples pool every function under the class label") {
  BuildReport report;
  auto samples = build_file_samples(
      {file("prog.c", std::string(kAddSource) + kLoopSource, "Sorting")},
      CorpusOptions{}, report);
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].label == "sorting");
  CHECK(report.functions_seen == 2);

  // The pool includes contexts from both functions: addOne's masked... no
  // masking here, so its own name must appear somewhere in the AST contexts.
  bool saw_add = false, saw_drain = false;
  for (const PathContext& pc : samples[0].contexts[0]) {
    if (pc.start_token == "addone" || pc.end_token == "addone") saw_add = true;
    if (pc.start_token == "drain" || pc.end_token == "drain") saw_drain = true;
  }
  CHECK(saw_add);
  CHECK(saw_drain);
}

TEST_CASE("file-level caps apply to the pooled contexts") {
  CorpusOptions opts;
  opts.limits.max_ast = 6;
  BuildReport report;
  auto samples = build_file_samples(
      {file("prog.c", std::string(kAddSource) + kLoopSource, "misc")}, opts, report);
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].contexts[0].size() == 6);
  CHECK(report.paths_before_caps[0] > 6);
}

TEST_CASE("unstratified splits follow the 70/20/10 rounding rule") {
  auto splits = make_splits(label_only({{"a", 10}}), 7, false);
  CHECK(splits.train.size() == 7);
  CHECK(splits.val.size() == 2);
  CHECK(splits.test.size() == 1);

  splits = make_splits(label_only({{"a", 5}}), 7, false);
  CHECK(splits.train.size() == 4);
  CHECK(splits.val.size() == 1);
  CHECK(splits.test.size() == 0);
}

TEST_CASE("stratified splits keep the ratios inside every class") {
  std::vector<std::pair<std::string, int>> spec;
  for (int c = 0; c < 104; ++c) spec.push_back({"class" + std::to_string(c), 500});
  auto splits = make_splits(label_only(spec), 99, true);
  CHECK(splits.train.size() == 36400);
  CHECK(splits.val.size() == 10400);
  CHECK(splits.test.size() == 5200);

  std::map<std::string, int> train_per, val_per, test_per;
  for (const Sample& s : splits.train) ++train_per[s.label];
  for (const Sample& s : splits.val) ++val_per[s.label];
  for (const Sample& s : splits.test) ++test_per[s.label];
  for (const auto& [label, n] : train_per) CHECK(n == 350);
  for (const auto& [label, n] : val_per) CHECK(n == 100);
  for (const auto& [label, n] : test_per) CHECK(n == 50);
}

TEST_CASE("stratified splitting refuses classes below ten samples") {
  CHECK_THROWS_AS(make_splits(label_only({{"big", 20}, {"tiny", 9}}), 1, true),
                  ClassTooSmall);
  CHECK_NOTHROW(make_splits(label_only({{"big", 20}, {"ok", 10}}), 1, true));
}

TEST_CASE("splits are deterministic in the seed and change with it") {
  BuildReport report;
  std::vector<SourceFile> files;
  for (int i = 0; i < 12; ++i)
    files.push_back(file("f" + std::to_string(i) + ".c",
                         "int pick_" + std::to_string(i) +
                             "(int a) {\n  int r = a + " + std::to_string(i) +
                             ";\n  return r;\n}\n"));
  auto samples = build_method_samples(files, CorpusOptions{}, report);
  REQUIRE(samples.size() == 12);

  auto a = make_splits(samples, 5, false);
  auto b = make_splits(samples, 5, false);
  CHECK(a.train == b.train);
  CHECK(a.val == b.val);
  CHECK(a.test == b.test);

  auto c = make_splits(samples, 6, false);
  bool differs = !(a.train == c.train) || !(a.val == c.val) || !(a.test == c.test);
  CHECK(differs);
}

TEST_CASE("datasets survive a write/read round trip") {
  BuildReport report;
  auto samples = build_method_samples(
      {file("a.c", std::string(kAddSource) + kLoopSource)}, CorpusOptions{}, report);
  REQUIRE(samples.size() == 2);

  std::stringstream io;
  write_dataset(samples, io);
  auto back = read_dataset(io);
  CHECK(back == samples);
}

TEST_CASE("dataset lines carry one space and two tabs") {
  Sample s;
  s.label = "do|it";
  s.contexts[0].push_back(parse_path_context("a,X↑Y↓Z,b", Rep::Ast));
  s.contexts[1].push_back(parse_path_context("start,START↓END,end", Rep::Cfg));
  s.contexts[2].push_back(parse_path_context("p,U↓V,q", Rep::Pdg));
  std::ostringstream out;
  write_dataset({s}, out);
  CHECK(out.str() == "do|it a,X↑Y↓Z,b\tstart,START↓END,end\tp,U↓V,q\n");
}

TEST_CASE("malformed dataset lines report their line number") {
  auto expect_line = [](const std::string& text, int line) {
    std::istringstream in(text);
    try {
      read_dataset(in);
      FAIL("expected FormatError for: " << text);
    } catch (const FormatError& e) {
      CHECK(e.line == line);
    }
  };
  expect_line("nolabelhere", 1);
  expect_line("ok a,X↓Y,b\tc,S↓E,d\tp,U↓V,q\nlbl a,X↓Y,b\tmissing", 2);
  expect_line("lbl a,X↓Y,b\tc,S↓E,d\tp,U↓V,q\textra", 1);
  expect_line("lbl noarrow,b\tc,S↓E,d\tp,U↓V,q", 1);
  expect_line("lbl a,X↓Y,b\tc,S↓E,d\tbadcontext", 1);
}

TEST_CASE("vocabularies reserve pad, unk and the mask token") {
  BuildReport report;
  auto samples = build_method_samples(
      {file("a.c", std::string(kAddSource) + kLoopSource)}, CorpusOptions{}, report);
  VocabSet vocab = build_vocabularies(samples);

  CHECK(vocab.tokens.at(kPadIndex) == "<pad>");
  CHECK(vocab.tokens.at(kUnkIndex) == "<unk>");
  CHECK(vocab.tokens.at(kMaskIndex) == "method_name");
  CHECK(vocab.tokens.count_at(kMaskIndex) > 0);
  for (const Vocabulary& paths : vocab.paths) {
    CHECK(paths.at(kPadIndex) == "<pad>");
    CHECK(paths.at(kUnkIndex) == "<unk>");
  }
  CHECK(vocab.labels.find("add|one") >= 0);
  CHECK(vocab.labels.find("drain") >= 0);
  CHECK(vocab.labels.find("<pad>") == -1);
}

TEST_CASE("the mask token stays pinned even when absent from the data") {
  BuildReport report;
  auto samples = build_file_samples({file("a.c", kAddSource, "cls")}, CorpusOptions{}, report);
  VocabSet vocab = build_vocabularies(samples);
  CHECK(vocab.tokens.at(kMaskIndex) == "method_name");
  CHECK(vocab.tokens.count_at(kMaskIndex) == 0);
}

TEST_CASE("vocabulary entries are ordered by count then lexicographically") {
  Sample s1{"l|one", {}};
  s1.contexts[0] = {parse_path_context("b,X↓Y,b", Rep::Ast),
                    parse_path_context("b,X↓Y,a", Rep::Ast)};
  s1.contexts[1] = {parse_path_context("c,S↓E,c", Rep::Cfg)};
  s1.contexts[2] = {parse_path_context("c,U↓V,d", Rep::Pdg)};
  Sample s2{"l|two", {}};
  s2.contexts[0] = {parse_path_context("a,X↓Z,a", Rep::Ast)};
  s2.contexts[1] = {parse_path_context("c,S↓E,c", Rep::Cfg)};
  s2.contexts[2] = {parse_path_context("d,U↓V,d", Rep::Pdg)};

  VocabSet vocab = build_vocabularies({s1, s2});
  // Counts: a=3, b=3, c=5, d=3. After the reserved entries: c, then a/b/d.
  CHECK(vocab.tokens.at(3) == "c");
  CHECK(vocab.tokens.at(4) == "a");
  CHECK(vocab.tokens.at(5) == "b");
  CHECK(vocab.tokens.at(6) == "d");
  CHECK(vocab.tokens.count_at(3) == 5);
  CHECK(vocab.tokens.count_at(4) == 3);

  CHECK(vocab.paths[0].at(2) == "X↓Y");
  CHECK(vocab.paths[0].at(3) == "X↓Z");
  CHECK(vocab.labels.at(0) == "l|one");
  CHECK(vocab.labels.at(1) == "l|two");
  CHECK(vocab.labels.count_at(0) == 1);
}

TEST_CASE("vocabulary files round trip") {
  BuildReport report;
  auto samples = build_method_samples(
      {file("a.c", std::string(kAddSource) + kLoopSource)}, CorpusOptions{}, report);
  VocabSet vocab = build_vocabularies(samples);

  std::stringstream io;
  write_vocab(vocab, io);
  VocabSet back = read_vocab(io);
  CHECK(back == vocab);
  CHECK(back.tokens.hash() == vocab.tokens.hash());

  std::string text = io.str();
  CHECK(text.find("token\t<pad>\t0\t0\n") == 0);
  CHECK(text.find("ast_path\t") != std::string::npos);
  CHECK(text.find("label\t") != std::string::npos);
}

TEST_CASE("vocabulary hashes react to any entry change") {
  Vocabulary a;
  a.add("<pad>", 0);
  a.add("x", 3);
  Vocabulary b;
  b.add("<pad>", 0);
  b.add("y", 3);
  Vocabulary c;
  c.add("<pad>", 0);
  CHECK(a.hash() != b.hash());
  CHECK(a.hash() != c.hash());
  // Counts do not participate: the hash pins the index mapping only.
  Vocabulary a2;
  a2.add("<pad>", 0);
  a2.add("x", 99);
  CHECK(a.hash() == a2.hash());
}

TEST_CASE("malformed vocabulary files are rejected with line numbers") {
  auto expect_line = [](const std::string& text, int line) {
    std::istringstream in(text);
    try {
      read_vocab(in);
      FAIL("expected FormatError for: " << text);
    } catch (const FormatError& e) {
      CHECK(e.line == line);
    }
  };
  expect_line("token\t<pad>\t0", 1);
  expect_line("token\t<pad>\t0\t0\ttoo_many", 1);
  expect_line("mystery\t<pad>\t0\t0", 1);
  expect_line("token\t<pad>\t0\t0\ntoken\t<unk>\t2\t0", 2);
  expect_line("token\t<pad>\tzero\t0", 1);
  expect_line("token\t\t0\t0", 1);
}

TEST_CASE("encoding maps unknown tokens to <unk> and unknown labels to -1") {
  Sample train{"known", {}};
  train.contexts[0] = {parse_path_context("seen,X↓Y,seen", Rep::Ast)};
  train.contexts[1] = {parse_path_context("seen,S↓E,seen", Rep::Cfg)};
  train.contexts[2] = {parse_path_context("seen,U↓V,seen", Rep::Pdg)};
  VocabSet vocab = build_vocabularies({train});

  EncodedSample enc = encode_sample(train, vocab);
  CHECK(enc.label == 0);
  REQUIRE(enc.contexts[0].size() == 1);
  CHECK(enc.contexts[0][0].start == vocab.tokens.find("seen"));
  CHECK(enc.contexts[0][0].path == vocab.paths[0].find("X↓Y"));
  CHECK(enc.contexts[0][0].start > kMaskIndex);

  Sample fresh{"never", {}};
  fresh.contexts[0] = {parse_path_context("novel,A↓B,seen", Rep::Ast)};
  EncodedSample oov = encode_sample(fresh, vocab);
  CHECK(oov.label == -1);
  REQUIRE(oov.contexts[0].size() == 1);
  CHECK(oov.contexts[0][0].start == kUnkIndex);
  CHECK(oov.contexts[0][0].path == kUnkIndex);
  CHECK(oov.contexts[0][0].end == vocab.tokens.find("seen"));
}

TEST_CASE("encoded masked samples use the pinned mask index") {
  BuildReport report;
  auto samples =
      build_method_samples({file("f.c", kAddSource)}, CorpusOptions{}, report);
  REQUIRE(samples.size() == 1);
  VocabSet vocab = build_vocabularies(samples);
  EncodedSample enc = encode_sample(samples[0], vocab);
  bool saw_mask_index = false;
  for (const auto& contexts : enc.contexts)
    for (const EncodedContext& ec : contexts)
      if (ec.start == kMaskIndex || ec.end == kMaskIndex) saw_mask_index = true;
  CHECK(saw_mask_index);
}
