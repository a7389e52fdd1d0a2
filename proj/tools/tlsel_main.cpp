#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "tlsel/anomaly.hpp"
#include "tlsel/baselines.hpp"
#include "tlsel/bocpd.hpp"
#include "tlsel/core_model.hpp"
#include "tlsel/evaluation.hpp"
#include "tlsel/features.hpp"
#include "tlsel/io.hpp"
#include "tlsel/rng.hpp"
#include "tlsel/svg.hpp"
#include "tlsel/synth.hpp"
#include "tlsel/timeline.hpp"

namespace tlsel {
namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Runs fn(0..count-1) on a worker pool; the first worker exception wins.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  const int workers = std::min<int>(jobs, static_cast<int>(count));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(
    const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const std::uint64_t s = std::stoull(text);
      return {s, s};
    }
    const std::uint64_t a = std::stoull(text.substr(0, colon));
    const std::uint64_t b = std::stoull(text.substr(colon + 1));
    if (b < a) throw std::invalid_argument("range end before start");
    return {a, b};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad seed range \"" + text +
                                "\" (expected N or A:B)");
  }
}

std::vector<int> parse_tau_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    int a, b;
    if (colon == std::string::npos) {
      a = b = std::stoi(text);
    } else {
      a = std::stoi(text.substr(0, colon));
      b = std::stoi(text.substr(colon + 1));
    }
    if (a < 0 || b < a) throw std::invalid_argument("bad bounds");
    std::vector<int> range;
    for (int t = a; t <= b; ++t) range.push_back(t);
    return range;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad tau range \"" + text +
                                "\" (expected N or A:B)");
  }
}

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string fmt6(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out << content;
}

// ---------------------------------------------------------------- synth ---

struct SynthOpts {
  std::string spec_path;
  std::string output_dir;
};

void run_synth(const SynthOpts& opt) {
  const ScenarioSpec spec = ScenarioSpec::from_json_file(opt.spec_path);
  std::filesystem::create_directories(opt.output_dir);

  std::vector<Post> all_posts;
  std::vector<Timeline> all_timelines;
  std::vector<GroundTruthAnnotation> all_annotations;
  nlohmann::json planted = nlohmann::json::object();

  for (int u = 0; u < spec.users; ++u) {
    char idbuf[16];
    std::snprintf(idbuf, sizeof idbuf, "u%03d", u);
    const std::string user_id = idbuf;

    const GeneratedHistory gen =
        generate_history(spec, user_id, mix_seed(spec.seed, user_id));
    const EventHistory& history = gen.history;

    // Annotation carriers: spans around the planted change points, or one
    // mid-history span when the scenario is changeless.
    std::vector<CandidateMoC> centers;
    for (Day d : gen.planted_cp_days) centers.push_back({d, "planted"});
    if (centers.empty())
      centers.push_back(
          {history.first_day() + history.span_days() / 2, "planted"});
    const std::vector<TimelineSpan> spans =
        build_timelines(history, centers, spec.radius_days);

    std::vector<Timeline> records;
    records.reserve(spans.size());
    for (const TimelineSpan& s : spans) records.push_back(to_record(s));

    const SimulatedAnnotations sim = simulate_annotations(
        history, gen.planted_cp_days, spec.annotation_model, records,
        mix_seed(spec.seed, user_id + "/annotations"));

    all_posts.insert(all_posts.end(), history.posts().begin(),
                     history.posts().end());
    all_timelines.insert(all_timelines.end(), records.begin(), records.end());
    all_annotations.insert(all_annotations.end(), sim.annotations.begin(),
                           sim.annotations.end());
    nlohmann::json days = nlohmann::json::array();
    for (Day d : gen.planted_cp_days) days.push_back(d.str());
    planted[user_id] = std::move(days);
  }

  const std::filesystem::path dir(opt.output_dir);
  write_posts_jsonl((dir / "posts.jsonl").string(), all_posts);
  write_timelines_jsonl((dir / "timelines.jsonl").string(), all_timelines);
  write_annotations_jsonl((dir / "annotations.jsonl").string(),
                          all_annotations);
  write_text_file((dir / "planted-cps.json").string(), planted.dump() + "\n");
  std::cout << "wrote " << all_posts.size() << " posts, "
            << all_timelines.size() << " timelines, "
            << all_annotations.size() << " annotations to " << opt.output_dir
            << "\n";
}

// --------------------------------------------------------------- detect ---

struct DetectOpts {
  std::string input;
  std::string output;
  std::string method;
  double alpha0 = 1.0;
  double beta0 = 1.0;
  double hazard = 100.0;
  std::string source = "posts";
  std::string mode = "both";
  int window_days = 90;
  int silence_min_days = 14;
  double prob_threshold = 0.01;
  std::string lexicon_path;
  std::string seeds = "0:99";
  bool append = false;
  std::string plot_user;
  std::string plot_out;
};

AnomalyConfig anomaly_config(const DetectOpts& opt) {
  AnomalyConfig cfg;
  cfg.window_days = opt.window_days;
  cfg.silence_min_days = opt.silence_min_days;
  cfg.prob_threshold = opt.prob_threshold;
  if (opt.source == "posts") cfg.source = CountSource::posts;
  else if (opt.source == "comments") cfg.source = CountSource::comments;
  else throw std::invalid_argument("unknown source \"" + opt.source + "\"");
  if (opt.mode == "high") cfg.mode = AnomalyMode::high;
  else if (opt.mode == "low") cfg.mode = AnomalyMode::low;
  else if (opt.mode == "both") cfg.mode = AnomalyMode::high_and_low;
  else throw std::invalid_argument("unknown mode \"" + opt.mode + "\"");
  return cfg;
}

void run_detect(const DetectOpts& opt, const GlobalOpts& global) {
  const std::map<std::string, EventHistory> histories =
      ingest_histories(opt.input);

  Lexicon lexicon;
  if (opt.method == "keywords") {
    if (opt.lexicon_path.empty())
      throw std::invalid_argument("--method keywords requires --lexicon");
    lexicon = Lexicon::load(opt.lexicon_path);
  }
  const auto [seed_lo, seed_hi] = parse_seed_range(opt.seeds);

  std::vector<const EventHistory*> users;
  users.reserve(histories.size());
  for (const auto& [_, h] : histories) users.push_back(&h);

  std::vector<std::vector<CmocRecord>> results(users.size());
  parallel_for(users.size(), global.jobs, [&](std::size_t i) {
    const EventHistory& h = *users[i];
    std::vector<CandidateMoC> cmocs;
    if (opt.method == "bocpd1") {
      cmocs = detect_bocpd(h, kBocpdPreset1, kBocpdMethodId1);
    } else if (opt.method == "bocpd2") {
      cmocs = detect_bocpd(h, kBocpdPreset2, kBocpdMethodId2);
    } else if (opt.method == "bocpd") {
      cmocs = detect_bocpd(h, {opt.alpha0, opt.beta0, opt.hazard},
                           "bocpd_pg_custom");
    } else if (opt.method == "ad") {
      cmocs = detect_anomalies(h, anomaly_config(opt));
    } else if (opt.method == "keywords") {
      cmocs = detect_keywords(h, lexicon);
    } else if (opt.method == "everyday") {
      cmocs = detect_every_day(h);
    } else if (opt.method == "random") {
      for (std::uint64_t s = seed_lo; s <= seed_hi; ++s) {
        const std::vector<CandidateMoC> one = detect_random_single_day(h, s);
        cmocs.insert(cmocs.end(), one.begin(), one.end());
      }
    } else {
      throw std::invalid_argument("unknown method \"" + opt.method + "\"");
    }
    for (const CandidateMoC& c : cmocs)
      results[i].push_back({h.user_id(), c.day, c.method_id});
  });

  std::vector<CmocRecord> rows;
  for (const std::vector<CmocRecord>& r : results)
    rows.insert(rows.end(), r.begin(), r.end());
  write_cmocs_jsonl(opt.output, rows, opt.append);
  std::cout << (opt.append ? "appended " : "wrote ") << rows.size()
            << " candidate days to " << opt.output << "\n";

  if (!opt.plot_user.empty()) {
    if (opt.plot_out.empty())
      throw std::invalid_argument("--plot-user requires --plot-out");
    const auto it = histories.find(opt.plot_user);
    if (it == histories.end())
      throw DataError("unknown user \"" + opt.plot_user + "\"");
    std::vector<Day> days;
    for (const CmocRecord& r : rows)
      if (r.user_id == opt.plot_user) days.push_back(r.day);
    const DailyCountSeries series = to_daily_counts(it->second);
    write_text_file(opt.plot_out,
                    daily_counts_svg(series, days,
                                     opt.plot_user + " daily posts (" +
                                         opt.method + ")"));
    std::cout << "wrote plot to " << opt.plot_out << "\n";
  }
}

// -------------------------------------------------------------- extract ---

struct ExtractOpts {
  std::string cmocs_path;
  std::string posts_path;
  std::string output;
  std::string method;  // empty = union of all methods
  int radius = 7;
  int min_posts = 10;
  int max_posts = 150;
  bool one_per_user = false;
};

void run_extract(const ExtractOpts& opt, const GlobalOpts& global) {
  const std::map<std::string, EventHistory> histories =
      ingest_histories(opt.posts_path);
  const std::vector<CmocRecord> records = read_cmocs_jsonl(opt.cmocs_path);

  std::map<std::string, std::set<Day>> days_by_user;
  for (const CmocRecord& r : records) {
    if (!opt.method.empty() && r.method_id != opt.method) continue;
    if (!histories.count(r.user_id))
      throw DataError("candidate day for unknown user \"" + r.user_id + "\"");
    days_by_user[r.user_id].insert(r.day);
  }

  std::vector<TimelineSpan> spans;
  for (const auto& [user, days] : days_by_user) {
    std::vector<CandidateMoC> cmocs;
    for (Day d : days) cmocs.push_back({d, opt.method});
    const std::vector<TimelineSpan> built =
        build_timelines(histories.at(user), cmocs, opt.radius);
    spans.insert(spans.end(), built.begin(), built.end());
  }

  spans = filter_timelines(std::move(spans), opt.min_posts, opt.max_posts);
  if (opt.one_per_user) spans = sample_one_per_user(spans, global.seed);

  std::vector<Timeline> out;
  out.reserve(spans.size());
  for (const TimelineSpan& s : spans) out.push_back(to_record(s));
  write_timelines_jsonl(opt.output, out);
  std::cout << "wrote " << out.size() << " timelines to " << opt.output
            << "\n";
}

// ------------------------------------------------------------- evaluate ---

struct EvaluateOpts {
  std::string cmocs_path;
  std::string posts_path;
  std::string timelines_path;
  std::string annotations_path;
  std::string output;
  int tau = 5;
  std::string metrics = "prf,covering,mv";
  std::string mv_tau_range = "0:6";
  std::string mv_aggregate = "sum-then-scale";
  std::string methods;  // force rows for these ids even with no cmocs
  std::string votes_output;
  std::string density_hist;
};

std::vector<AnnotatedTimeline> load_annotated(
    const std::string& posts_path, const std::string& timelines_path,
    const std::string& annotations_path,
    std::map<std::string, EventHistory>* histories_out = nullptr) {
  std::map<std::string, EventHistory> histories =
      ingest_histories(posts_path);
  const std::vector<Timeline> timelines =
      read_timelines_jsonl(timelines_path, histories);
  const std::vector<GroundTruthAnnotation> annotations =
      read_annotations_jsonl(annotations_path);

  std::map<std::string, std::vector<GroundTruthAnnotation>> by_timeline;
  std::set<std::string> known;
  for (const Timeline& t : timelines) known.insert(t.timeline_id);
  for (const GroundTruthAnnotation& a : annotations) {
    if (!known.count(a.timeline_id))
      throw DataError("annotation references unknown timeline \"" +
                      a.timeline_id + "\"");
    by_timeline[a.timeline_id].push_back(a);
  }

  std::vector<AnnotatedTimeline> out;
  out.reserve(timelines.size());
  for (const Timeline& t : timelines) {
    const auto it = by_timeline.find(t.timeline_id);
    out.push_back(aggregate_annotations(
        t, it == by_timeline.end()
               ? std::vector<GroundTruthAnnotation>{}
               : it->second));
  }
  if (histories_out) *histories_out = std::move(histories);
  return out;
}

void run_evaluate(const EvaluateOpts& opt) {
  const std::vector<AnnotatedTimeline> annotated = load_annotated(
      opt.posts_path, opt.timelines_path, opt.annotations_path);

  std::map<std::string, CmocsByUser> by_method;
  for (const CmocRecord& r : read_cmocs_jsonl(opt.cmocs_path))
    by_method[r.method_id][r.user_id].push_back(r.day);
  for (auto& [_, by_user] : by_method) {
    for (auto& [__, days] : by_user) {
      std::sort(days.begin(), days.end());
      days.erase(std::unique(days.begin(), days.end()), days.end());
    }
  }
  for (const std::string& id : split_csv_list(opt.methods))
    by_method.try_emplace(id);

  EvalOptions eopt;
  eopt.tau = opt.tau;
  eopt.mv_tau_range = parse_tau_range(opt.mv_tau_range);
  if (opt.mv_aggregate == "sum-then-scale")
    eopt.mv_aggregate = MvAggregate::sum_then_scale;
  else if (opt.mv_aggregate == "scale-then-mean")
    eopt.mv_aggregate = MvAggregate::scale_then_mean;
  else
    throw std::invalid_argument("unknown --mv-aggregate \"" +
                                opt.mv_aggregate + "\"");
  eopt.with_prf = eopt.with_covering = eopt.with_mv = false;
  for (const std::string& m : split_csv_list(opt.metrics)) {
    if (m == "prf") eopt.with_prf = true;
    else if (m == "covering") eopt.with_covering = true;
    else if (m == "mv") eopt.with_mv = true;
    else throw std::invalid_argument("unknown metric \"" + m + "\"");
  }
  if (!eopt.with_prf && !eopt.with_covering && !eopt.with_mv)
    throw std::invalid_argument("no metrics selected");

  const std::vector<MethodScorecard> rows =
      evaluate_corpus(by_method, annotated, eopt);

  std::string csv = "method,P,R,F1,covering,MV\n";
  for (const MethodScorecard& r : rows) {
    csv += r.method_id + "," + fmt6(r.mean_precision) + "," +
           fmt6(r.mean_recall) + "," + fmt6(r.f1) + "," + fmt6(r.covering) +
           "," + fmt6(r.mv_scaled) + "\n";
  }
  write_text_file(opt.output, csv);
  std::cout << "wrote scorecard for " << rows.size() << " methods to "
            << opt.output << "\n";

  if (!opt.votes_output.empty()) {
    std::string votes = "method,raw_votes\n";
    for (const MethodScorecard& r : rows)
      votes += r.method_id + "," + fmt6(r.raw_votes) + "\n";
    write_text_file(opt.votes_output, votes);
  }
  if (!opt.density_hist.empty()) {
    std::vector<double> densities;
    for (const AnnotatedTimeline& t : annotated)
      if (const auto m = find_medoid(t)) densities.push_back(m->density);
    if (densities.empty())
      throw DataError("no annotated timelines with ground-truth days");
    write_text_file(opt.density_hist,
                    histogram_svg(densities, 20, "GTMoC density per timeline"));
  }
}

// ----------------------------------------------------------------- rank ---

struct RankOpts {
  std::string input;
  std::string output;
};

void run_rank(const RankOpts& opt) {
  std::ifstream in(opt.input);
  if (!in) throw DataError("cannot open " + opt.input);
  std::map<std::string, double> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DataError(opt.input + " line " + std::to_string(lineno) +
                      ": expected method,value");
    const std::string method = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    if (lineno == 1 && method == "method") continue;  // header
    try {
      raw[method] = std::stod(value);
    } catch (const std::exception&) {
      throw DataError(opt.input + " line " + std::to_string(lineno) +
                      ": bad value \"" + value + "\"");
    }
  }
  const std::map<std::string, double> scaled = rank_methods(raw);
  std::string csv = "method,MV\n";
  for (const auto& [method, mv] : scaled)
    csv += method + "," + fmt6(mv) + "\n";
  write_text_file(opt.output, csv);
  std::cout << "wrote ranking for " << scaled.size() << " methods to "
            << opt.output << "\n";
}

// ------------------------------------------------------------- features ---

struct FeaturesOpts {
  std::string scores_path;
  std::string posts_path;
  std::string timelines_path;
  std::string annotations_path;
  std::string output;
  double l2 = 1.0;
};

void run_features(const FeaturesOpts& opt) {
  const std::vector<AnnotatedTimeline> annotated = load_annotated(
      opt.posts_path, opt.timelines_path, opt.annotations_path);
  const std::map<std::string, PostScores> scores =
      read_scores_jsonl(opt.scores_path);

  std::vector<double> densities;
  for (const AnnotatedTimeline& t : annotated)
    densities.push_back(t.posts.empty()
                            ? 0.0
                            : static_cast<double>(t.gtmoc_days.size()) /
                                  static_cast<double>(t.posts.size()));
  const std::vector<int> labels = label_by_quartile(densities);

  std::vector<Vector> x_rows;
  std::vector<int> y;
  for (std::size_t i = 0; i < annotated.size(); ++i) {
    if (labels[i] == 0) continue;
    x_rows.push_back(extract_features(annotated[i].posts, scores));
    y.push_back(labels[i]);
  }
  if (x_rows.empty()) throw DataError("no dense/sparse timelines to fit");
  Matrix x(static_cast<Eigen::Index>(x_rows.size()), kFeatureCount);
  for (std::size_t i = 0; i < x_rows.size(); ++i)
    x.row(static_cast<Eigen::Index>(i)) = x_rows[i].transpose();

  const LogregModel model = train_logreg(x, y, opt.l2);

  std::vector<std::pair<std::string, double>> coefs;
  for (int j = 0; j < kFeatureCount; ++j)
    coefs.emplace_back(feature_names()[static_cast<std::size_t>(j)],
                       model.coefficients[j]);
  std::sort(coefs.begin(), coefs.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  std::string csv = "feature,coefficient\n";
  for (const auto& [name, value] : coefs)
    csv += name + "," + fmt6(value) + "\n";
  csv += "intercept," + fmt6(model.intercept) + "\n";
  write_text_file(opt.output, csv);
  std::cout << "wrote " << coefs.size() << " coefficients to " << opt.output
            << " (" << model.iterations << " iterations)\n";
}

}  // namespace
}  // namespace tlsel

int main(int argc, char** argv) {
  using namespace tlsel;

  CLI::App app{
      "Segment user event histories around candidate moments of change and "
      "score timeline-selection methods"};
  app.require_subcommand(1);
  app.fallthrough();  // let subcommands pass --seed/--jobs up

  GlobalOpts global;
  app.add_option("--seed", global.seed, "Base seed for sampling steps");
  app.add_option("--jobs", global.jobs, "Worker threads for per-user stages")
      ->check(CLI::PositiveNumber);

  SynthOpts synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic annotated corpus");
  synth_cmd->add_option("--spec,--input", synth.spec_path, "Scenario JSON")
      ->required();
  synth_cmd
      ->add_option("--output-dir,--output", synth.output_dir,
                   "Directory for the corpus files")
      ->required();

  DetectOpts detect;
  CLI::App* detect_cmd =
      app.add_subcommand("detect", "Emit candidate change days per user");
  detect_cmd->add_option("--input", detect.input, "posts JSONL")->required();
  detect_cmd->add_option("--output", detect.output, "cmocs JSONL")->required();
  detect_cmd
      ->add_option("--method", detect.method,
                   "bocpd1|bocpd2|bocpd|ad|keywords|random|everyday")
      ->required();
  detect_cmd->add_option("--alpha0", detect.alpha0,
                         "Gamma shape (method bocpd)");
  detect_cmd->add_option("--beta0", detect.beta0, "Gamma rate (method bocpd)");
  detect_cmd->add_option("--hazard", detect.hazard,
                         "Expected run length (method bocpd)");
  detect_cmd->add_option("--source", detect.source, "posts|comments");
  detect_cmd->add_option("--mode", detect.mode, "high|low|both (method ad)");
  detect_cmd->add_option("--window", detect.window_days,
                         "Trailing window in days (method ad)");
  detect_cmd->add_option("--silence-min", detect.silence_min_days,
                         "Minimum silence length in days (method ad)");
  detect_cmd->add_option("--threshold", detect.prob_threshold,
                         "Tail probability threshold (method ad)");
  detect_cmd->add_option("--lexicon", detect.lexicon_path,
                         "Phrase file (method keywords)");
  detect_cmd->add_option("--seeds", detect.seeds,
                         "Seed or A:B range (method random)");
  detect_cmd->add_flag("--append", detect.append,
                       "Append to the output instead of truncating");
  detect_cmd->add_option("--plot-user", detect.plot_user,
                         "Write an SVG of this user's daily counts");
  detect_cmd->add_option("--plot-out", detect.plot_out, "SVG output path");

  ExtractOpts extract;
  CLI::App* extract_cmd = app.add_subcommand(
      "extract", "Build candidate timelines around candidate days");
  extract_cmd->add_option("--cmocs,--input", extract.cmocs_path, "cmocs JSONL")
      ->required();
  extract_cmd->add_option("--posts", extract.posts_path, "posts JSONL")
      ->required();
  extract_cmd->add_option("--output", extract.output, "timelines JSONL")
      ->required();
  extract_cmd->add_option("--method", extract.method,
                          "Only this method's days (default: union)");
  extract_cmd->add_option("--radius", extract.radius, "Span radius in days");
  extract_cmd->add_option("--min-posts", extract.min_posts,
                          "Minimum posts per timeline");
  extract_cmd->add_option("--max-posts", extract.max_posts,
                          "Maximum posts per timeline");
  extract_cmd->add_flag("--one-per-user", extract.one_per_user,
                        "Sample a single timeline per user");

  EvaluateOpts evaluate;
  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "Score methods against annotated timelines");
  evaluate_cmd
      ->add_option("--cmocs,--input", evaluate.cmocs_path, "cmocs JSONL")
      ->required();
  evaluate_cmd->add_option("--posts", evaluate.posts_path, "posts JSONL")
      ->required();
  evaluate_cmd
      ->add_option("--timelines", evaluate.timelines_path, "timelines JSONL")
      ->required();
  evaluate_cmd
      ->add_option("--annotations", evaluate.annotations_path,
                   "annotations JSONL")
      ->required();
  evaluate_cmd->add_option("--output", evaluate.output, "scorecard CSV")
      ->required();
  evaluate_cmd->add_option("--tau", evaluate.tau, "Match margin in days");
  evaluate_cmd->add_option("--metrics", evaluate.metrics,
                           "Comma list of prf,covering,mv");
  evaluate_cmd->add_option("--mv-tau-range", evaluate.mv_tau_range,
                           "Margin range A:B for Medoid Votes");
  evaluate_cmd->add_option("--mv-aggregate", evaluate.mv_aggregate,
                           "sum-then-scale|scale-then-mean");
  evaluate_cmd->add_option(
      "--methods", evaluate.methods,
      "Comma list of method ids that must appear even without candidates");
  evaluate_cmd->add_option("--votes-output", evaluate.votes_output,
                           "CSV of raw vote totals");
  evaluate_cmd->add_option("--density-hist", evaluate.density_hist,
                           "SVG histogram of timeline densities");

  RankOpts rank;
  CLI::App* rank_cmd =
      app.add_subcommand("rank", "Min-max scale raw vote totals");
  rank_cmd->add_option("--input", rank.input, "CSV of method,raw_votes")
      ->required();
  rank_cmd->add_option("--output", rank.output, "CSV of method,MV")
      ->required();

  FeaturesOpts features;
  CLI::App* features_cmd = app.add_subcommand(
      "features", "Fit a dense-vs-sparse timeline classifier");
  features_cmd
      ->add_option("--scores,--input", features.scores_path, "scores JSONL")
      ->required();
  features_cmd->add_option("--posts", features.posts_path, "posts JSONL")
      ->required();
  features_cmd
      ->add_option("--timelines", features.timelines_path, "timelines JSONL")
      ->required();
  features_cmd
      ->add_option("--annotations", features.annotations_path,
                   "annotations JSONL")
      ->required();
  features_cmd->add_option("--output", features.output, "coefficients CSV")
      ->required();
  features_cmd->add_option("--l2", features.l2, "L2 regularization strength");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth_cmd->parsed()) run_synth(synth);
    else if (detect_cmd->parsed()) run_detect(detect, global);
    else if (extract_cmd->parsed()) run_extract(extract, global);
    else if (evaluate_cmd->parsed()) run_evaluate(evaluate);
    else if (rank_cmd->parsed()) run_rank(rank);
    else if (features_cmd->parsed()) run_features(features);
  } catch (const DataError& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
