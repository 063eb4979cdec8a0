// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include "qamine/cli.hpp"
#include "qamine/io.hpp"
#include "qamine/kernels.hpp"
#include "qamine/version.hpp"

namespace qamine::cli {

using nlohmann::json;

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out.push_back(c);
    }
  }
  return out + "\"";
}

void print_error(std::ostream& err, std::string_view code, std::string_view message) {
  err << "error: code=" << code << " message=" << quote(message) << '\n';
}

Source source_option(const std::string& text) {
  try {
    return parse_source(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void add_store_option(CLI::App* cmd, std::string& store, bool writes = false) {
  cmd->add_option(writes ? "--store,--out" : "--store", store, "Corpus store directory")->envname("QAMINE_STORE");
}

fs::path require_store(const std::string& store) {
  if (store.empty()) throw UsageError("no store directory given (use --store or QAMINE_STORE)");
  return store;
}

template <class T>
std::optional<fs::path> opt_path(const T& s) {
  return s.empty() ? std::nullopt : std::optional<fs::path>(s);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mining developer questions: ingest, filter, topic-model and report"};
  app.name("qamine");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::function<void()> action;

  // ingest-dump
  std::string idump_store, idump_posts, idump_tags;
  bool no_body = false;
  auto* c_idump = app.add_subcommand("ingest-dump", "Load a Stack Exchange Posts.xml (and Tags.xml) into the store");
  add_store_option(c_idump, idump_store, true);
  c_idump->add_option("--posts", idump_posts, "Posts.xml")->required();
  c_idump->add_option("--tags", idump_tags, "Tags.xml, used to cross-check tag counts");
  c_idump->add_flag("--no-body", no_body, "Do not keep post bodies");
  c_idump->callback([&] {
    action = [&] {
      ingest_dump({require_store(idump_store), idump_posts, opt_path(idump_tags), !no_body}, err);
    };
  });

  // ingest-forum
  std::string iforum_store, iforum_archive, iforum_tech_file;
  std::vector<std::string> iforum_tech;
  auto* c_iforum = app.add_subcommand("ingest-forum", "Load an archived forum (HTML pages + forums.tsv)");
  add_store_option(c_iforum, iforum_store, true);
  c_iforum->add_option("--archive", iforum_archive, "Archive directory")->required();
  c_iforum->add_option("--technological", iforum_tech, "Name of a technological forum (repeatable)");
  c_iforum->add_option("--technological-file", iforum_tech_file, "File with one technological forum name per line");
  c_iforum->callback([&] {
    action = [&] {
      auto names = iforum_tech;
      if (!iforum_tech_file.empty()) {
        if (!fs::is_regular_file(iforum_tech_file)) throw UsageError("not found: " + iforum_tech_file);
        for (auto& n : read_word_list(iforum_tech_file)) names.push_back(std::move(n));
      }
      ingest_forum({require_store(iforum_store), iforum_archive, names}, err);
    };
  });

  // filter
  FilterOptions fopts;
  std::string f_store, f_out, f_tagstats;
  auto* c_filter = app.add_subcommand("filter", "Select domain questions by tag expansion and title keywords");
  add_store_option(c_filter, f_store);
  c_filter->add_option("--pattern", fopts.config.initial_pattern, "Initial tag pattern (substring or LIKE with %)")
      ->capture_default_str();
  c_filter->add_option("--trt,--trt-min", fopts.config.trt_min, "Minimum tag relevance")->capture_default_str();
  c_filter->add_option("--tst,--tst-min", fopts.config.tst_min, "Minimum tag significance")->capture_default_str();
  c_filter->add_option("--out", f_out, "Question set output (NDJSON)")->required();
  c_filter->add_option("--tagstats", f_tagstats, "Tag statistics output (CSV)");
  c_filter->callback([&] {
    action = [&] {
      fopts.store = require_store(f_store);
      fopts.out = f_out;
      fopts.tagstats = opt_path(f_tagstats);
      filter(fopts, err);
    };
  });

  // stats
  StatsOptions sopts;
  std::string s_store, s_source = "dump", s_qset, s_out;
  auto* c_stats = app.add_subcommand("stats", "Question/answer statistics for one source");
  add_store_option(c_stats, s_store);
  c_stats->add_option("--source", s_source, "dump or forum")->capture_default_str();
  c_stats->add_flag("--technological-only", sopts.technological_only, "Only questions in technological forums");
  c_stats->add_option("--question-set", s_qset, "Restrict to a question set");
  c_stats->add_flag("--json", sopts.json, "JSON output");
  c_stats->add_option("--out", s_out, "Also write the report here");
  c_stats->callback([&] {
    action = [&] {
      sopts.store = require_store(s_store);
      sopts.source = source_option(s_source);
      sopts.question_set = opt_path(s_qset);
      sopts.out = opt_path(s_out);
      out << stats(sopts);
    };
  });

  // prep
  std::string p_store, p_source = "dump", p_qset, p_stop, p_prot, p_out;
  auto* c_prep = app.add_subcommand("prep", "Tokenize, remove stop words and stem question titles");
  add_store_option(c_prep, p_store);
  c_prep->add_option("--source", p_source, "dump or forum")->capture_default_str();
  c_prep->add_option("--questions,--question-set", p_qset, "Question set from `filter`");
  c_prep->add_option("--stoplist", p_stop, "Stop word list (default: built-in English list)");
  c_prep->add_option("--protected", p_prot, "Words exempt from stemming");
  c_prep->add_option("--out", p_out, "Documents output (NDJSON)")->required();
  c_prep->callback([&] {
    action = [&] {
      prep({require_store(p_store), source_option(p_source), opt_path(p_qset), opt_path(p_stop), opt_path(p_prot),
            p_out},
           err);
    };
  });

  // train
  TrainCommandOptions topts;
  std::string t_docs, t_out, t_kernel;
  double t_alpha = 0.0;
  auto* c_train = app.add_subcommand("train", "Fit LDA by collapsed Gibbs sampling");
  c_train->add_option("--documents", t_docs, "Documents from `prep`")->required();
  c_train->add_option("--out", t_out, "Model output")->required();
  c_train->add_option("--topics,-k", topts.config.num_topics, "Number of topics")->capture_default_str();
  auto* alpha_opt = c_train->add_option("--alpha", t_alpha, "Document-topic prior (default 1/topics)");
  c_train->add_option("--beta", topts.config.beta, "Topic-word prior")->capture_default_str();
  c_train->add_option("--iterations", topts.config.iterations, "Gibbs sweeps")->capture_default_str();
  c_train->add_option("--seed", topts.config.seed, "RNG seed")->capture_default_str();
  c_train->add_option("--min-count", topts.config.min_count, "Drop rarer words")->capture_default_str();
  c_train->add_option("--kernel", t_kernel, "Force a kernel: scalar, avx2 or neon");
  c_train->callback([&] {
    action = [&] {
      if (alpha_opt->count() > 0) topts.config.alpha = t_alpha;
      topts.documents = t_docs;
      topts.out = t_out;
      if (!t_kernel.empty()) topts.kernel = t_kernel;
      train(topts, err);
    };
  });

  // report
  ReportOptions ropts;
  std::string r_model, r_labels, r_out;
  auto* c_report = app.add_subcommand("report", "Write topics.csv, nddt.csv and main_topics.txt for a model");
  c_report->add_option("--model", r_model, "Model file")->required();
  c_report->add_option("--labels", r_labels, "Label file (topic_id,label)");
  c_report->add_option("--top-n", ropts.top_n, "Words per topic")->capture_default_str();
  c_report->add_option("--out-dir", r_out, "Output directory")->required();
  c_report->callback([&] {
    action = [&] {
      ropts.model = r_model;
      ropts.labels = opt_path(r_labels);
      ropts.out_dir = r_out;
      report(ropts, err);
    };
  });

  // match
  MatchCommandOptions mopts;
  std::string m_left, m_left_labels, m_right, m_right_ext, m_right_labels, m_out, m_dec_out, m_dec, m_summary;
  auto* c_match = app.add_subcommand("match", "Propose topic correspondences between two topic sets");
  c_match->add_option("--left", m_left, "topics.csv")->required();
  c_match->add_option("--left-labels", m_left_labels, "Labels for the left topics");
  c_match->add_option("--right", m_right, "topics.csv");
  c_match->add_option("--right-external", m_right_ext, "Reference topic table (id,label,word,probability)");
  c_match->add_option("--right-labels", m_right_labels, "Labels for the right topics");
  c_match->add_option("--top-m", mopts.match.top_m, "Words compared per topic")->capture_default_str();
  c_match->add_option("--min-shared", mopts.match.min_shared, "Shared words needed for a candidate")
      ->capture_default_str();
  c_match->add_option("--out", m_out, "Candidates output (CSV)")->required();
  c_match->add_option("--decisions-out", m_dec_out, "Write a draft decisions file if none exists");
  c_match->add_option("--decisions", m_dec, "Summarize this decisions file");
  c_match->add_option("--summary-out", m_summary, "Write the summary here");
  c_match->callback([&] {
    action = [&] {
      mopts.left = m_left;
      mopts.left_labels = opt_path(m_left_labels);
      mopts.right = opt_path(m_right);
      mopts.right_external = opt_path(m_right_ext);
      mopts.right_labels = opt_path(m_right_labels);
      mopts.out = m_out;
      mopts.decisions_out = opt_path(m_dec_out);
      mopts.decisions = opt_path(m_dec);
      mopts.summary_out = opt_path(m_summary);
      match(mopts, err);
    };
  });

  // relevant
  RelevantOptions relopts;
  std::string rel_store, rel_source = "dump", rel_model, rel_out;
  long long rel_topic = -1;
  auto* c_rel = app.add_subcommand("relevant", "Highly viewed, well scored questions per dominant topic");
  add_store_option(c_rel, rel_store);
  c_rel->add_option("--source", rel_source, "dump or forum")->capture_default_str();
  c_rel->add_option("--model", rel_model, "Model file")->required();
  auto* topic_opt = c_rel->add_option("--topic", rel_topic, "Topic id (default: all topics)");
  c_rel->add_option("--min-views", relopts.relevance.min_views, "Minimum views")->capture_default_str();
  c_rel->add_option("--min-score", relopts.relevance.min_score, "Minimum score when present")->capture_default_str();
  c_rel->add_option("--out", rel_out, "Output (CSV)")->required();
  c_rel->callback([&] {
    action = [&] {
      relopts.store = require_store(rel_store);
      relopts.source = source_option(rel_source);
      relopts.model = rel_model;
      if (topic_opt->count() > 0) {
        if (rel_topic < 0) throw UsageError("--topic must be non-negative");
        relopts.topic = static_cast<std::size_t>(rel_topic);
      }
      relopts.out = rel_out;
      relevant(relopts, err);
    };
  });

  // pipeline
  std::string pl_config, pl_store, pl_out;
  std::uint64_t pl_seed = 0;
  int pl_iterations = 0;
  bool pl_force = false;
  auto* c_pipe = app.add_subcommand("pipeline", "Run every stage from a JSON config");
  c_pipe->add_option("--config", pl_config, "Pipeline config (JSON)")->required();
  auto* seed_opt = c_pipe->add_option("--seed", pl_seed, "Override lda.seed");
  auto* iter_opt = c_pipe->add_option("--iterations", pl_iterations, "Override lda.iterations");
  c_pipe->add_option("--store", pl_store, "Override store_dir");
  c_pipe->add_option("--out", pl_out, "Override out_dir");
  c_pipe->add_flag("--force", pl_force, "Rerun stages even when up to date");
  c_pipe->callback([&] {
    action = [&] {
      if (!fs::is_regular_file(pl_config)) throw UsageError("config file not found: " + pl_config);
      json j;
      try {
        j = json::parse(read_file(pl_config));
      } catch (const json::exception& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
      }
      const auto base = fs::absolute(pl_config).parent_path();
      if (!j.contains("store_dir")) {
        if (const char* env = std::getenv("QAMINE_STORE"); env != nullptr && *env != '\0') j["store_dir"] = env;
      }
      auto config = PipelineConfig::from_json(j, base);
      if (seed_opt->count() > 0) config.lda.seed = pl_seed;
      if (iter_opt->count() > 0) config.lda.iterations = pl_iterations;
      if (!pl_store.empty()) config.store_dir = pl_store;
      if (!pl_out.empty()) config.out_dir = pl_out;
      pipeline(config, pl_force, err);
    };
  });

  // kernels
  auto* c_kernels = app.add_subcommand("kernels", "List the compute kernels available on this machine");
  c_kernels->callback([&] {
    action = [&] {
      const auto& active = simd::active_kernels();
      for (auto isa : simd::available_isas()) {
        out << simd::to_string(isa) << (isa == active.isa ? " (active)" : "") << '\n';
      }
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return 2;
  }

  try {
    if (action) action();
    return 0;
  } catch (const UsageError& e) {
    print_error(err, e.code(), e.what());
    return 2;
  } catch (const Error& e) {
    print_error(err, e.code(), e.what());
    return 1;
  } catch (const fs::filesystem_error& e) {
    print_error(err, "io", e.what());
    return 1;
  } catch (const nlohmann::json::exception& e) {
    print_error(err, "parse", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return 1;
  }
}

}  // namespace qamine::cli
