// Command-line front end; all domain work happens behind the C API.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempocap/tempocap.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // validation / domain / io errors
constexpr int kExitUsage = 2;    // flag and flag-value errors

int api_exit(tc_status status) {
  if (status == TC_OK) return kExitOk;
  std::cerr << "error: " << tc_last_error() << '\n';
  return kExitFailure;
}

int usage_error(const std::string& message) {
  std::cerr << "usage error: " << message << '\n';
  return kExitUsage;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> pieces;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    pieces.push_back(text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return pieces;
}

// K cutoffs must be positive integers in strictly ascending order.
bool valid_k_csv(const std::string& k_csv) {
  long long previous = 0;
  for (const std::string& piece : split_csv(k_csv)) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(piece, &used);
    } catch (const std::exception&) {
      return false;
    }
    if (used != piece.size() || value < 1 || value <= previous) return false;
    previous = value;
  }
  return true;
}

bool valid_metrics(const std::vector<std::string>& metrics,
                   std::string& problem) {
  for (const std::string& metric : metrics) {
    if (metric != "bleu" && metric != "rouge" && metric != "meteor" &&
        metric != "bert" && metric != "clap") {
      problem = "unknown metric '" + metric +
                "' (choose from bleu, rouge, meteor, bert, clap)";
      return false;
    }
    if ((metric == "bert" || metric == "clap") && metrics.size() > 1) {
      problem = "metric '" + metric +
                "' reads its own input schema and must be requested alone";
      return false;
    }
  }
  return true;
}

// --seed wins; otherwise TEMPOCAP_SEED; otherwise 0.
bool resolve_seed(const std::optional<std::uint64_t>& flag_seed,
                  std::uint64_t& seed, std::string& problem) {
  if (flag_seed) {
    seed = *flag_seed;
    return true;
  }
  const char* env = std::getenv("TEMPOCAP_SEED");
  if (!env || !*env) {
    seed = 0;
    return true;
  }
  std::string text(env);
  std::size_t used = 0;
  try {
    seed = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) {
    problem = "TEMPOCAP_SEED is not an unsigned integer: '" + text + "'";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporally-segmented music-caption tooling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tc_version()));

  std::string clips, text_docs, audio_docs, truth, hyp, ref, out;
  std::string k_csv = "1,5,10";
  std::string metrics_csv = "bleu,rouge,meteor";
  std::string mode;
  std::optional<std::uint64_t> seed_flag;
  std::size_t count = 5000;
  double temperature = 1.0;
  double window_s = 10.0;
  bool force_include_seed = false;

  CLI::App* validate = app.add_subcommand(
      "validate", "Load a clip corpus and report value-level issues");
  validate->add_option("--clips", clips, "clip corpus JSONL")->required();
  validate->add_option("--out", out, "write the JSON report here");

  CLI::App* compose = app.add_subcommand(
      "compose", "Sample synthetic songs and render their captions");
  compose->add_option("--clips", clips, "clip corpus JSONL")->required();
  compose->add_option("--out", out, "plan/caption JSONL output")->required();
  compose->add_option("--seed", seed_flag,
                      "RNG seed (default: TEMPOCAP_SEED or 0)");
  compose->add_option("--count", count, "number of songs (default 5000)");
  compose->add_option("--temperature", temperature,
                      "softmax temperature (default 1.0)");
  compose->add_flag("--force-include-seed", force_include_seed,
                    "always draw the seed clip first");

  CLI::App* render = app.add_subcommand(
      "render-prompt", "Render instruction prompts from JSONL records");
  render->add_option("--hyp", hyp, "input records JSONL")->required();
  render->add_option("--mode", mode, "paraphrase | pseudolabel")
      ->required()
      ->check(CLI::IsMember({"paraphrase", "pseudolabel"}));
  render->add_option("--out", out, "prompt JSONL output")->required();

  CLI::App* parse = app.add_subcommand(
      "parse", "Parse caption text and rewrite it canonically");
  parse->add_option("--hyp", hyp, "caption text file")->required();
  parse->add_option("--out", out, "canonical text output")->required();

  CLI::App* retrieve = app.add_subcommand(
      "retrieve", "Rank audio documents for every text document");
  retrieve->add_option("--text-docs", text_docs, "text-side docs JSONL")
      ->required();
  retrieve->add_option("--audio-docs", audio_docs, "audio-side docs JSONL")
      ->required();
  retrieve->add_option("--out", out, "ranked-list JSONL output")->required();
  retrieve->add_option("--truth", truth,
                       "query->item truth JSONL; also writes metrics next to "
                       "--out as <out>.report.jsonl");
  retrieve->add_option("--k", k_csv, "recall cutoffs (default 1,5,10)");
  retrieve
      ->add_option("--window-s", window_s,
                   "window length in seconds for windowed docs (default 10)")
      ->check(CLI::PositiveNumber);

  CLI::App* eval_captions = app.add_subcommand(
      "eval-captions", "Score hypothesis captions against references");
  eval_captions->add_option("--hyp", hyp, "hypothesis file")->required();
  eval_captions->add_option("--ref", ref, "reference file")->required();
  eval_captions->add_option(
      "--metrics", metrics_csv,
      "comma list of bleu, rouge, meteor (default) or bert / clap alone");
  eval_captions->add_option("--mode", mode, "global | complete")
      ->check(CLI::IsMember({"global", "complete"}));
  eval_captions->add_option("--out", out, "metric report JSONL")->required();

  CLI::App* eval_retrieval = app.add_subcommand(
      "eval-retrieval", "Score an existing ranked-list file against truth");
  eval_retrieval->add_option("--hyp", hyp, "ranked-list JSONL")->required();
  eval_retrieval->add_option("--truth", truth, "query->item truth JSONL")
      ->required();
  eval_retrieval->add_option("--k", k_csv, "recall cutoffs (default 1,5,10)");
  eval_retrieval->add_option("--out", out, "metric report JSONL")->required();

  CLI::App* stats = app.add_subcommand(
      "stats", "Dataset statistics over a caption JSONL file");
  stats->add_option("--hyp", hyp, "caption JSONL")->required();
  stats->add_option("--out", out, "stats JSON output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (validate->parsed()) {
    char* report = nullptr;
    size_t issues = 0;
    tc_status status = tc_validate_file(clips.c_str(), &report, &issues);
    if (status != TC_OK) return api_exit(status);
    if (!out.empty()) {
      std::ofstream file(out, std::ios::binary | std::ios::trunc);
      file << report << '\n';
      if (!file) {
        std::cerr << "error: cannot write " << out << '\n';
        tc_string_free(report);
        return kExitFailure;
      }
    }
    std::cerr << (issues == 0 ? "ok" : "invalid") << ": " << report << '\n';
    tc_string_free(report);
    return issues == 0 ? kExitOk : kExitFailure;
  }

  if (compose->parsed()) {
    if (count < 1) return usage_error("--count must be at least 1");
    if (!(temperature > 0.0))
      return usage_error("--temperature must be positive");
    tc_compose_opts opts;
    tc_compose_opts_init(&opts);
    std::string problem;
    if (!resolve_seed(seed_flag, opts.seed, problem))
      return usage_error(problem);
    opts.count = count;
    opts.temperature = temperature;
    opts.force_include_seed = force_include_seed ? 1 : 0;
    return api_exit(tc_compose_file(clips.c_str(), &opts, out.c_str()));
  }

  if (render->parsed())
    return api_exit(
        tc_render_prompts_file(hyp.c_str(), mode.c_str(), out.c_str()));

  if (parse->parsed())
    return api_exit(tc_canonicalize_file(hyp.c_str(), out.c_str()));

  if (retrieve->parsed()) {
    if (!valid_k_csv(k_csv))
      return usage_error("--k must be positive, strictly ascending integers");
    std::string report_path = out + ".report.jsonl";
    return api_exit(tc_retrieve_file(
        text_docs.c_str(), audio_docs.c_str(),
        truth.empty() ? nullptr : truth.c_str(), k_csv.c_str(), window_s,
        out.c_str(), truth.empty() ? nullptr : report_path.c_str()));
  }

  if (eval_captions->parsed()) {
    std::vector<std::string> metrics = split_csv(metrics_csv);
    std::string problem;
    if (!valid_metrics(metrics, problem)) return usage_error(problem);
    return api_exit(tc_eval_captions_file(
        hyp.c_str(), ref.c_str(), metrics_csv.c_str(),
        mode.empty() ? nullptr : mode.c_str(), out.c_str()));
  }

  if (eval_retrieval->parsed()) {
    if (!valid_k_csv(k_csv))
      return usage_error("--k must be positive, strictly ascending integers");
    return api_exit(tc_eval_ranked_file(hyp.c_str(), truth.c_str(),
                                        k_csv.c_str(), out.c_str()));
  }

  if (stats->parsed())
    return api_exit(tc_stats_file(hyp.c_str(), out.c_str()));

  return usage_error("no command given");
}
