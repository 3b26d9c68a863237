// Copyright 2026 The Phrasefix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "phrasefix/corrector.h"
#include "phrasefix/evaluation.h"
#include "phrasefix/ngram_model.h"
#include "phrasefix/phrase_distance.h"
#include "phrasefix/phrase_index.h"
#include "phrasefix/substituter.h"
#include "phrasefix/synonym_lexicon.h"
#include "phrasefix/synthetic_corpus.h"
#include "phrasefix/text.h"

namespace phrasefix {
namespace {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

// Writes to a file when a path is given, otherwise to the fallback stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DataError("cannot write " + path);
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& stream() { return *stream_; }
  void Finish() {
    stream_->flush();
    if (!*stream_) throw DataError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

NgramModel LoadModel(const std::string& path) {
  std::ifstream in = OpenInput(path);
  try {
    return ParseArpa(in);
  } catch (const ArpaError& e) {
    throw DataError(path + ": " + e.what());
  }
}

SynonymLexicon LoadLexicon(const std::string& path) {
  if (path.empty()) return SynonymLexicon();
  std::ifstream in = OpenInput(path);
  return SynonymLexicon::Load(in);
}

std::vector<Tokens> LoadSentences(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ReadSentences(in);
}

std::vector<int> ParseOrders(const std::string& text) {
  std::vector<int> orders;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      orders.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad order '" + item + "' in --orders");
    }
  }
  if (orders.empty()) throw UsageError("--orders selects no n-gram orders");
  return orders;
}

json PhraseJson(const ScoredPhrase& p) {
  return {{"phrase", JoinTokens(p.tokens)}, {"score", p.score}};
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string corpus;
  int order = 4;
  std::string out;
};

void TrainLm(const TrainArgs& args, std::ostream& out) {
  std::vector<Tokens> corpus = LoadSentences(args.corpus);
  std::erase_if(corpus, [](const Tokens& s) { return s.empty(); });
  if (corpus.empty()) throw DataError(args.corpus + ": empty corpus");
  const NgramModel model = TrainWittenBell(corpus, args.order);
  std::ostringstream arpa;
  WriteArpa(model, arpa);
  std::istringstream check(arpa.str());
  ParseArpa(check);
  Output sink(args.out, out);
  sink.stream() << arpa.str();
  sink.Finish();
}

struct IndexArgs {
  std::string lm;
  std::string orders;
  std::string out;
};

void BuildIndexCommand(const IndexArgs& args, std::ostream& out) {
  const NgramModel model = LoadModel(args.lm);
  const std::vector<int> orders = args.orders.empty()
                                      ? DefaultPhraseOrders(model.order())
                                      : ParseOrders(args.orders);
  for (int n : orders) {
    if (n < 1 || n > model.order()) {
      throw UsageError("--orders entry " + std::to_string(n) +
                       " outside 1.." + std::to_string(model.order()));
    }
  }
  const PhraseIndex index = PhraseIndex::Build(ExtractPhrases(model, orders));
  Output sink(args.out, out);
  index.Save(sink.stream());
  sink.Finish();
}

struct CorrectArgs {
  std::string input;
  std::string lm;
  std::string index;
  std::string lexicon;
  std::string config;
  std::string mode;
  std::size_t k = 5;
  std::size_t pool = 200;
  int d_t = 3;
  int align_threshold = 3;
  std::string algorithm = "dp";
  std::size_t phrase_length = 7;
  std::size_t window_cap = 10;
  int max_length_delta = -1;
  std::string out;
};

// Applies the JSON config file, then any flag given on the command line.
SubstituterConfig ResolveConfig(const CorrectArgs& args, const CLI::App& cmd) {
  SubstituterConfig config;
  auto given = [&](const char* flag) { return cmd.count(flag) > 0; };
  try {
    if (!args.config.empty()) {
      std::ifstream in = OpenInput(args.config);
      const json j = json::parse(in);
      if (j.contains("mode")) {
        const auto mode = ParseWordOrderMode(j["mode"].get<std::string>());
        if (!mode) throw UsageError("config: mode must be A, B, C or D");
        config.distance.mode = *mode;
      }
      if (j.contains("weights")) {
        const json& w = j["weights"];
        if (w.is_array()) {
          if (w.size() != 3) throw UsageError("config: weights needs 3 values");
          config.distance.orthographic_weight = w[0].get<double>();
          config.distance.synonym_weight = w[1].get<double>();
          config.distance.order_weight = w[2].get<double>();
        } else {
          config.distance.orthographic_weight =
              w.value("orthographic", config.distance.orthographic_weight);
          config.distance.synonym_weight =
              w.value("synonym", config.distance.synonym_weight);
          config.distance.order_weight =
              w.value("order", config.distance.order_weight);
        }
      }
      config.distance.retrieval_threshold =
          j.value("d_t", config.distance.retrieval_threshold);
      config.distance.align_threshold =
          j.value("align_threshold", config.distance.align_threshold);
      config.k = j.value("k", config.k);
      config.pool_size = j.value("t_pool", config.pool_size);
    }
  } catch (const json::exception& e) {
    throw UsageError(args.config + ": " + e.what());
  }
  if (given("--mode")) {
    const auto mode = ParseWordOrderMode(args.mode);
    if (!mode) throw UsageError("--mode must be A, B, C or D");
    config.distance.mode = *mode;
  }
  if (given("--k")) config.k = args.k;
  if (given("--t-pool")) config.pool_size = args.pool;
  if (given("--d-t")) config.distance.retrieval_threshold = args.d_t;
  if (given("--align-threshold")) {
    config.distance.align_threshold = args.align_threshold;
  }
  config.max_length_delta = args.max_length_delta;
  try {
    config.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

void CorrectCommand(const CorrectArgs& args, const CLI::App& cmd,
                    std::ostream& out) {
  if (args.algorithm != "dp" && args.algorithm != "fixed") {
    throw UsageError("--algorithm must be dp or fixed");
  }
  const SubstituterConfig config = ResolveConfig(args, cmd);
  const NgramModel model = LoadModel(args.lm);
  const SynonymLexicon lexicon = LoadLexicon(args.lexicon);
  PhraseIndex index;
  if (args.index.empty()) {
    index = PhraseIndex::Build(
        ExtractPhrases(model, DefaultPhraseOrders(model.order())));
  } else {
    std::ifstream in = OpenInput(args.index);
    index = PhraseIndex::Load(in);
  }
  const std::vector<Tokens> sentences = LoadSentences(args.input);

  const Substituter substituter(index, model, lexicon, config);
  const CandidateSource dp_source = [&](TokenSpan phrase) {
    return substituter.FindBestSub(phrase);
  };
  const WindowCandidateSource fixed_source = [&](TokenSpan window) {
    std::vector<Tokens> out;
    for (DocId id : FindKBestCommon(index, window)) {
      out.push_back(index.doc(id).tokens);
    }
    return out;
  };
  FixedConfig fixed;
  fixed.phrase_length = args.phrase_length;
  fixed.window_candidate_cap = args.window_cap;

  Output sink(args.out, out);
  for (std::size_t line = 0; line < sentences.size(); ++line) {
    json record = {{"line", line + 1}, {"algorithm", args.algorithm}};
    const Tokens& sentence = sentences[line];
    if (sentence.empty()) {
      record["original"] = "";
      record["corrected"] = "";
      record["score_before"] = 0.0;
      record["score_after"] = 0.0;
      record["kbest"] = json::array();
      sink.stream() << record.dump() << '\n';
      continue;
    }
    CorrectionResult result;
    try {
      result = args.algorithm == "dp"
                   ? CorrectDp(sentence, model, dp_source, config.k)
                   : CorrectFixed(sentence, model, fixed_source, fixed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    record["original"] = JoinTokens(result.original);
    record["corrected"] = JoinTokens(result.corrected);
    record["score_before"] = result.score_before;
    record["score_after"] = result.score_after;
    json kbest = json::array();
    for (const ScoredPhrase& p : result.kbest) kbest.push_back(PhraseJson(p));
    record["kbest"] = std::move(kbest);
    record["elapsed_ms"] = result.elapsed_seconds * 1000.0;
    record["counters"] = {
        {"split_evaluations", result.counters.split_evaluations},
        {"substitution_calls", result.counters.substitution_calls},
        {"rescored", result.counters.rescored},
        {"search_leaves", result.counters.search_leaves}};
    if (args.algorithm == "fixed") {
      record["window_candidate_cap"] = result.window_candidate_cap;
    }
    sink.stream() << record.dump() << '\n';
  }
  sink.Finish();
}

struct NoiseArgs {
  std::string input;
  std::string lm;
  std::string lexicon;
  std::uint64_t seed = 0;
  std::size_t swaps = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  std::size_t typos = 0;
  std::string out;
};

void InjectNoiseCommand(const NoiseArgs& args, std::ostream& out) {
  const std::vector<Tokens> sentences = LoadSentences(args.input);
  const SynonymLexicon lexicon = LoadLexicon(args.lexicon);
  std::vector<std::string> vocabulary;
  if (!args.lm.empty()) {
    const NgramModel model = LoadModel(args.lm);
    vocabulary.assign(model.vocabulary().begin(), model.vocabulary().end());
    std::sort(vocabulary.begin(), vocabulary.end());
  }
  NoiseResources resources;
  resources.lexicon = args.lexicon.empty() ? nullptr : &lexicon;
  resources.vocabulary = vocabulary;

  Output sink(args.out, out);
  for (std::size_t line = 0; line < sentences.size(); ++line) {
    NoiseSpec spec;
    spec.seed = args.seed + line;
    spec.swap_adjacent = args.swaps;
    spec.delete_word = args.deletions;
    spec.substitute_word = args.substitutions;
    spec.typo_char = args.typos;
    sink.stream() << JoinTokens(InjectNoise(sentences[line], spec, resources))
                  << '\n';
  }
  sink.Finish();
}

struct EvaluateArgs {
  std::string before;
  std::string after;
  std::vector<std::string> references;
  std::string lm;
  std::string format = "text";
  std::size_t max_n = 4;
  std::string out;
};

void EvaluateCommand(const EvaluateArgs& args, std::ostream& out) {
  if (args.format != "text" && args.format != "json") {
    throw UsageError("--format must be text or json");
  }
  const NgramModel model = LoadModel(args.lm);
  const std::vector<Tokens> before = LoadSentences(args.before);
  const std::vector<Tokens> after = LoadSentences(args.after);
  if (before.size() != after.size()) {
    throw DataError("before and after files differ in line count");
  }
  std::vector<std::vector<Tokens>> references(after.size());
  for (const std::string& path : args.references) {
    const std::vector<Tokens> refs = LoadSentences(path);
    if (refs.size() != after.size()) {
      throw DataError(path + " differs in line count from the hypotheses");
    }
    for (std::size_t i = 0; i < refs.size(); ++i) {
      references[i].push_back(refs[i]);
    }
  }
  if (after.empty()) throw DataError("no sentences to evaluate");

  const json report = {
      {"perplexity_before", CorpusPerplexity(model, before)},
      {"perplexity_after", CorpusPerplexity(model, after)},
      {"bleu_before", Bleu(before, references, args.max_n)},
      {"bleu_after", Bleu(after, references, args.max_n)},
      {"sentence_count", after.size()}};

  Output sink(args.out, out);
  if (args.format == "json") {
    sink.stream() << report.dump() << '\n';
  } else {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-20s %12s %8s\n%-20s %12.3f %8.3f\n%-20s %12.3f %8.3f\n",
                  "", "Perplexity", "BLEU", "Before correction",
                  report["perplexity_before"].get<double>(),
                  report["bleu_before"].get<double>(), "After correction",
                  report["perplexity_after"].get<double>(),
                  report["bleu_after"].get<double>());
    sink.stream() << buf << "Sentences: " << after.size() << '\n';
  }
  sink.Finish();
}

struct SynthArgs {
  std::size_t sentences = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

void SynthCommand(const SynthArgs& args, std::ostream& out) {
  Output sink(args.out, out);
  for (const Tokens& s : GenerateTemplateCorpus(args.sentences, args.seed)) {
    sink.stream() << JoinTokens(s) << '\n';
  }
  sink.Finish();
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Noisy sentence correction with an n-gram language model",
               "phrasefix"};
  app.require_subcommand(1);

  TrainArgs train;
  CLI::App* train_cmd =
      app.add_subcommand("train-lm", "Train a Witten-Bell ARPA model");
  train_cmd->add_option("--corpus", train.corpus, "One sentence per line")
      ->required();
  train_cmd->add_option("--order", train.order, "Model order")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--out", train.out, "ARPA output path");

  IndexArgs index;
  CLI::App* index_cmd =
      app.add_subcommand("build-index", "Index the model's phrases");
  index_cmd->add_option("--lm", index.lm, "ARPA model")->required();
  index_cmd->add_option("--orders", index.orders,
                        "Comma-separated n-gram orders (default 2..N)");
  index_cmd->add_option("--out", index.out, "Index output path");

  CorrectArgs correct;
  CLI::App* correct_cmd =
      app.add_subcommand("correct", "Correct one sentence per input line");
  correct_cmd->add_option("--input", correct.input, "Noisy sentences")
      ->required();
  correct_cmd->add_option("--lm", correct.lm, "ARPA model")->required();
  correct_cmd->add_option("--index", correct.index,
                          "Saved phrase index (built from --lm if absent)");
  correct_cmd->add_option("--lexicon", correct.lexicon, "Synonym sets");
  correct_cmd->add_option("--config", correct.config, "JSON configuration");
  correct_cmd->add_option("--mode", correct.mode, "Distance function A-D");
  correct_cmd->add_option("--k", correct.k, "Candidates kept per span");
  correct_cmd->add_option("--t-pool", correct.pool, "First-stage pool size");
  correct_cmd->add_option("--d-t", correct.d_t, "Retrieval edit threshold");
  correct_cmd->add_option("--align-threshold", correct.align_threshold,
                          "Word alignment edit threshold");
  correct_cmd->add_option("--algorithm", correct.algorithm, "dp or fixed");
  correct_cmd->add_option("--phrase-len", correct.phrase_length,
                          "Phrase length for the fixed algorithm");
  correct_cmd->add_option("--window-cap", correct.window_cap,
                          "Candidates explored per window (fixed)");
  correct_cmd->add_option("--max-length-delta", correct.max_length_delta,
                          "Skip candidates whose length differs by more");
  correct_cmd->add_option("--out", correct.out, "JSON lines output path");

  NoiseArgs noise;
  CLI::App* noise_cmd =
      app.add_subcommand("inject-noise", "Add seeded errors to sentences");
  noise_cmd->add_option("--input", noise.input, "Clean sentences")->required();
  noise_cmd->add_option("--seed", noise.seed, "Base seed; line i uses seed+i");
  noise_cmd->add_option("--swap", noise.swaps, "Adjacent swaps per sentence");
  noise_cmd->add_option("--delete", noise.deletions, "Deleted words");
  noise_cmd->add_option("--substitute", noise.substitutions,
                        "Substituted words");
  noise_cmd->add_option("--typo", noise.typos, "Character typos");
  noise_cmd->add_option("--lm", noise.lm, "Vocabulary source for substitutes");
  noise_cmd->add_option("--lexicon", noise.lexicon, "Synonym sets");
  noise_cmd->add_option("--out", noise.out, "Output path");

  EvaluateArgs evaluate;
  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Perplexity and BLEU before and after");
  eval_cmd->add_option("--before", evaluate.before, "Uncorrected sentences")
      ->required();
  eval_cmd->add_option("--after,--hyp", evaluate.after, "Corrected sentences")
      ->required();
  eval_cmd->add_option("--ref", evaluate.references,
                       "Reference file, repeatable")
      ->required();
  eval_cmd->add_option("--lm", evaluate.lm, "ARPA model")->required();
  eval_cmd->add_option("--max-n", evaluate.max_n, "Highest BLEU n-gram order")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--format", evaluate.format, "text or json");
  eval_cmd->add_option("--out", evaluate.out, "Report output path");

  SynthArgs synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth-corpus", "Generate a template corpus");
  synth_cmd->add_option("--sentences", synth.sentences, "Sentence count");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--out", synth.out, "Output path");

  std::vector<const char*> argv = {"phrasefix"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) {
      TrainLm(train, out);
    } else if (*index_cmd) {
      BuildIndexCommand(index, out);
    } else if (*correct_cmd) {
      CorrectCommand(correct, *correct_cmd, out);
    } else if (*noise_cmd) {
      InjectNoiseCommand(noise, out);
    } else if (*eval_cmd) {
      EvaluateCommand(evaluate, out);
    } else if (*synth_cmd) {
      SynthCommand(synth, out);
    }
  } catch (const UsageError& e) {
    err << "phrasefix: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "phrasefix: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace phrasefix
