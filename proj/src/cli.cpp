#include "threefold/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "threefold/spectrum.hpp"
#include "threefold/stats.hpp"
#include "threefold/version.hpp"

namespace threefold::cli {

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Options {
  std::string group = "cyclic:2";
  std::string cocycle = "trivial";
  std::string cocycle_file;
  std::string trs = "none";
  int dl = 2;
  int dr = 2;
  std::size_t samples = 2000;
  std::uint64_t seed = 7;
  std::string out;
  std::string format;  // csv | json; per-command default when empty
  std::string config_path;
};

SampleConfig to_sample_config(const Options& o) {
  SampleConfig cfg;
  cfg.group_spec = o.group;
  cfg.cocycle_name = o.cocycle;
  cfg.cocycle_file = o.cocycle_file;
  cfg.trs_mode = parse_trs_mode(o.trs);
  cfg.d_l = o.dl;
  cfg.d_r = o.dr;
  cfg.seed = o.seed;
  return cfg;
}

std::string provenance_comment(const char* command, const Options& o) {
  std::ostringstream os;
  os << "# threefold " << kVersion << " | command=" << command
     << " | group=" << o.group << " | cocycle="
     << (o.cocycle_file.empty() ? o.cocycle : o.cocycle_file)
     << " | trs=" << o.trs << " | dl=" << o.dl << " | dr=" << o.dr
     << " | samples=" << o.samples << " | seed=" << o.seed << "\n";
  return os.str();
}

nlohmann::json provenance_json(const char* command, const Options& o) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = {{"group", o.group},
                 {"cocycle", o.cocycle_file.empty() ? o.cocycle : o.cocycle_file},
                 {"trs", o.trs},
                 {"dl", o.dl},
                 {"dr", o.dr},
                 {"samples", o.samples},
                 {"seed", o.seed}};
  return j;
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output path '" + out_path + "'");
  f << payload;
}

void load_config_defaults(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config file: ") + e.what());
  }
  if (j.contains("group")) o.group = j["group"].get<std::string>();
  if (j.contains("cocycle")) o.cocycle = j["cocycle"].get<std::string>();
  if (j.contains("cocycle_file")) o.cocycle_file = j["cocycle_file"].get<std::string>();
  if (j.contains("trs")) o.trs = j["trs"].get<std::string>();
  if (j.contains("dl")) o.dl = j["dl"].get<int>();
  if (j.contains("dr")) o.dr = j["dr"].get<int>();
  if (j.contains("samples")) o.samples = j["samples"].get<std::size_t>();
  if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out")) o.out = j["out"].get<std::string>();
  if (j.contains("format")) o.format = j["format"].get<std::string>();
}

std::string pick_format(const Options& o, const char* fallback) {
  if (o.format.empty()) return fallback;
  if (o.format != "csv" && o.format != "json")
    throw std::invalid_argument("unknown format '" + o.format + "' (csv|json)");
  return o.format;
}

// ---- commands -------------------------------------------------------------

int cmd_groups(const Options& o) {
  std::ostringstream os;
  os << "group spec grammar: cyclic:<n> (n>=1) | dihedral:<n> (n>=3) | q8 | "
        "product(<spec>,<spec>)\n\n";
  os << "examples:\n";
  os << "  cyclic:2                     Z2, order 2\n";
  os << "  dihedral:3                   C3v, order 6 (smallest non-abelian)\n";
  os << "  q8                           quaternion group, order 8\n";
  os << "  product(cyclic:3,cyclic:3)   Z3 x Z3, order 9\n\n";
  os << "cocycle presets:\n";
  os << "  trivial     any group        all phases 1\n";
  os << "  z2-minus    cyclic:2         omega(p,p) = -1\n";
  os << "  z3z3-root   product(cyclic:3,cyclic:3)  omega((a1,a2),(b1,b2)) = "
        "exp(2 pi i a2 b1 / 3)\n\n";
  os << "trs modes: none | plus (omega(t,t)=+1) | minus (omega(t,t)=-1, "
        "Upsilon applied; needs even dl, dr)\n";
  write_output(o.out, os.str());
  return 0;
}

int cmd_irreps(const Options& o) {
  const ResolvedConfig cfg = resolve(to_sample_config(o));
  DecompositionPrediction pred =
      predict_threefold(cfg.group, cfg.cocycle, cfg.trs, cfg.d_l, cfg.d_r, cfg.seed);
  const auto& dec = pred.decomposition;
  const std::string format = pick_format(o, "json");
  std::ostringstream os;
  if (format == "csv") {
    os << provenance_comment("irreps", o);
    os << "label,dim,multiplicity,indicator,partner\n";
    for (const auto& b : dec.blocks) {
      os << b.label << "," << b.dim << "," << b.dim << ",";
      if (b.indicator == kIndicatorUnset) os << "-";
      else os << b.indicator;
      os << ",";
      if (b.partner >= 0) os << dec.blocks[b.partner].label;
      else os << "-";
      os << "\n";
    }
  } else {
    nlohmann::json j = nlohmann::json::parse(decomposition_to_json(dec));
    j["provenance"] = provenance_json("irreps", o);
    os << j.dump(2) << "\n";
  }
  write_output(o.out, os.str());
  return 0;
}

int cmd_predict(const Options& o, bool format_given) {
  const ResolvedConfig cfg = resolve(to_sample_config(o));
  const DecompositionPrediction pred =
      predict_threefold(cfg.group, cfg.cocycle, cfg.trs, cfg.d_l, cfg.d_r, cfg.seed);
  std::ostringstream os;
  if (!format_given) {
    os << "threefold " << kVersion << ", seed " << cfg.seed << "\n";
    os << "group " << cfg.group.name << " (order " << cfg.group.order
       << "), cocycle " << cfg.cocycle_name << ", trs " << trs_mode_name(cfg.mode)
       << ", d_L=" << cfg.d_l << ", d_R=" << cfg.d_r << "\n";
    os << "prediction: " << pred.summary() << "\n";
    if (cfg.trs)
      os << "D+ = " << pred.d_plus << ", D- = " << pred.d_minus
         << ", regular indicator = " << pred.iota_reg << "\n";
    for (const auto& e : pred.entries) {
      const auto& blk = pred.decomposition.blocks[e.block_index];
      os << "  block " << blk.label << ": " << ensemble_name(e.ensemble) << " "
         << e.rows << "x" << e.cols << ", degeneracy " << e.degeneracy
         << ", element variance " << fmt17(e.element_variance);
      if (e.partner_index >= 0)
        os << " (conjugate partner: block "
           << pred.decomposition.blocks[e.partner_index].label << ")";
      os << "\n";
    }
  } else if (pick_format(o, "json") == "csv") {
    os << provenance_comment("predict", o);
    os << "block,ensemble,rows,cols,degeneracy,element_variance,partner\n";
    for (const auto& e : pred.entries) {
      const auto& blk = pred.decomposition.blocks[e.block_index];
      os << blk.label << "," << ensemble_name(e.ensemble) << "," << e.rows << ","
         << e.cols << "," << e.degeneracy << "," << fmt17(e.element_variance) << ",";
      if (e.partner_index >= 0)
        os << pred.decomposition.blocks[e.partner_index].label;
      else os << "-";
      os << "\n";
    }
  } else {
    nlohmann::json j;
    j["provenance"] = provenance_json("predict", o);
    j["summary"] = pred.summary();
    if (cfg.trs) {
      j["D_plus"] = pred.d_plus;
      j["D_minus"] = pred.d_minus;
      j["iota_reg"] = pred.iota_reg;
    }
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : pred.entries) {
      nlohmann::json je;
      je["block"] = pred.decomposition.blocks[e.block_index].label;
      je["ensemble"] = ensemble_name(e.ensemble);
      je["rows"] = e.rows;
      je["cols"] = e.cols;
      je["degeneracy"] = e.degeneracy;
      je["element_variance"] = e.element_variance;
      if (e.partner_index >= 0)
        je["partner"] = pred.decomposition.blocks[e.partner_index].label;
      entries.push_back(je);
    }
    j["entries"] = entries;
    os << j.dump(2) << "\n";
  }
  write_output(o.out, os.str());
  return 0;
}

int cmd_sample(const Options& o) {
  const ResolvedConfig cfg = resolve(to_sample_config(o));
  const DecompositionPrediction pred =
      predict_threefold(cfg.group, cfg.cocycle, cfg.trs, cfg.d_l, cfg.d_r, cfg.seed);
  const Matrix u = build_partial_diagonalizer(pred.decomposition);
  const std::string format = pick_format(o, "csv");

  std::ostringstream csv;
  nlohmann::json spectra = nlohmann::json::array();
  if (format == "csv") {
    csv << provenance_comment("sample", o);
    csv << "sample,block,copy,index,eigenvalue\n";
  }
  for (std::size_t s = 0; s < o.samples; ++s) {
    const auto c = sample_coefficients(cfg, s);
    const auto wm = build_w(c, cfg.cocycle);
    // per-copy spectra from the transformed W; copies are numerically
    // identical, and the copy column records which replica produced a row
    const auto bt = block_transform(wm, u, pred.decomposition);
    for (std::size_t b = 0; b < bt.copies.size(); ++b) {
      const int label = pred.decomposition.blocks[b].label;
      for (std::size_t copy = 0; copy < bt.copies[b].size(); ++copy) {
        const auto spec = wishart_spectrum(bt.copies[b][copy], false);
        if (format == "csv") {
          for (std::size_t i = 0; i < spec.values.size(); ++i)
            csv << s << "," << label << "," << copy << "," << i << ","
                << fmt17(spec.values[i]) << "\n";
        } else {
          nlohmann::json je;
          je["sample"] = s;
          je["block"] = label;
          je["copy"] = copy;
          je["values"] = spec.values;
          spectra.push_back(je);
        }
      }
    }
  }
  if (format == "csv") {
    write_output(o.out, csv.str());
  } else {
    nlohmann::json j;
    j["provenance"] = provenance_json("sample", o);
    j["spectra"] = spectra;
    write_output(o.out, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_hist(const Options& o) {
  const ResolvedConfig cfg = resolve(to_sample_config(o));
  const DecompositionPrediction pred =
      predict_threefold(cfg.group, cfg.cocycle, cfg.trs, cfg.d_l, cfg.d_r, cfg.seed);
  const auto pooled = pooled_block_eigenvalues(cfg, pred, o.samples);
  const std::string format = pick_format(o, "csv");
  constexpr int kBins = 60;

  std::ostringstream csv;
  nlohmann::json jblocks = nlohmann::json::array();
  if (format == "csv") {
    csv << provenance_comment("hist", o);
    csv << "block,bin_left,bin_right,count\n";
  }
  for (std::size_t e = 0; e < pred.entries.size(); ++e) {
    const int label = pred.decomposition.blocks[pred.entries[e].block_index].label;
    double top = 0.0;
    for (const double v : pooled[e]) top = std::max(top, v);
    const double width = (top > 0.0 ? top : 1.0) / kBins;
    std::vector<std::size_t> counts(kBins, 0);
    for (const double v : pooled[e]) {
      int bin = static_cast<int>(v / width);
      if (bin >= kBins) bin = kBins - 1;
      counts[bin]++;
    }
    if (format == "csv") {
      for (int b = 0; b < kBins; ++b)
        csv << label << "," << fmt17(b * width) << "," << fmt17((b + 1) * width)
            << "," << counts[b] << "\n";
    } else {
      nlohmann::json jb;
      jb["block"] = label;
      jb["bin_width"] = width;
      jb["counts"] = counts;
      jblocks.push_back(jb);
    }
  }
  if (format == "csv") {
    write_output(o.out, csv.str());
  } else {
    nlohmann::json j;
    j["provenance"] = provenance_json("hist", o);
    j["histograms"] = jblocks;
    write_output(o.out, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const ResolvedConfig cfg = resolve(to_sample_config(o));
  const VerificationReport rep = verify_decomposition(cfg, o.samples);
  const std::string format = pick_format(o, "json");
  std::ostringstream os;
  if (format == "csv") {
    os << provenance_comment("verify", o);
    os << "block,ensemble,rows,cols,degeneracy,degeneracy_ok,ks_distance,"
          "ks_threshold,ks_ok,kramers_ok,pair_identity_ok\n";
    for (const auto& b : rep.blocks) {
      os << b.label << "," << b.ensemble << "," << b.rows << "," << b.cols << ","
         << b.degeneracy << "," << (b.degeneracy_ok ? 1 : 0) << ","
         << fmt17(b.ks_distance) << "," << fmt17(b.ks_threshold) << ","
         << (b.ks_ok ? 1 : 0) << ",";
      if (b.kramers_ok) os << (*b.kramers_ok ? 1 : 0);
      else os << "-";
      os << ",";
      if (b.pair_identity_ok) os << (*b.pair_identity_ok ? 1 : 0);
      else os << "-";
      os << "\n";
    }
    os << "# predicted=" << rep.predicted << "\n";
    os << "# cross_block_max_correlation=" << fmt17(rep.cross_block_max_correlation)
       << " off_block_max_residual=" << fmt17(rep.off_block_max_residual)
       << " pass=" << (rep.pass ? 1 : 0) << "\n";
  } else {
    nlohmann::json j = nlohmann::json::parse(rep.to_json());
    j["provenance"] = provenance_json("verify", o);
    os << j.dump(2) << "\n";
  }
  write_output(o.out, os.str());
  return rep.pass ? 0 : 1;
}

int cmd_reproduce_table1(const Options& o) {
  struct Row {
    const char* trs;
    const char* cocycle;
    const char* omega_pp;
    const char* omega_tt;
    const char* expected_2;  // summary at d_L = d_R = 2
    const char* expected_4;  // summary at d_L = d_R = 4 (minus rows)
  };
  const Row rows[] = {
      {"none", "trivial", "N/A", "N/A", "LUE(2x2) + LUE(2x2)", nullptr},
      {"plus", "trivial", "+", "+", "LOE(2x2) + LOE(2x2)", nullptr},
      {"plus", "z2-minus", "-", "+", "LUE+conj-LUE(2x2)", nullptr},
      {"minus", "trivial", "+", "-", nullptr, "LSE(4x4) + LSE(4x4)"},
      {"minus", "z2-minus", "-", "-", nullptr, "LUE+conj-LUE(4x4)"},
  };
  std::ostringstream os;
  os << "threefold " << kVersion << " | Z2 ensemble table: n = " << o.samples
     << " samples per row, seed " << o.seed << "\n";
  os << "Z2T   omega(p,p)  omega(t,t)  d    predicted"
        "                      verdict\n";
  bool all_ok = true;
  const auto t0 = std::chrono::steady_clock::now();
  for (const Row& row : rows) {
    Options ro = o;
    ro.group = "cyclic:2";
    ro.cocycle = row.cocycle;
    ro.trs = row.trs;
    const bool minus = std::string(row.trs) == "minus";
    ro.dl = ro.dr = minus ? 4 : 2;
    const char* expected = minus ? row.expected_4 : row.expected_2;
    const ResolvedConfig cfg = resolve(to_sample_config(ro));
    const VerificationReport rep = verify_decomposition(cfg, o.samples);
    const bool structure_ok = rep.predicted == expected;
    all_ok = all_ok && structure_ok && rep.pass;
    char line[256];
    std::snprintf(line, sizeof(line), "%-5s %-11s %-11s %-4d %-30s %s\n",
                  std::string(row.trs) == "none" ? "x" : "ok", row.omega_pp,
                  row.omega_tt, ro.dl, rep.predicted.c_str(),
                  (structure_ok && rep.pass) ? "pass" : "FAIL");
    os << line;
  }
  const auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  os << (all_ok ? "all rows pass" : "FAILURES present") << " (" << dt << " ms)\n";
  write_output(o.out, os.str());
  return all_ok ? 0 : 1;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"random symmetric states, entanglement spectra and their "
               "threefold-way block decomposition"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options o;
  // --config provides defaults; explicit flags override
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      load_config_defaults(args[i + 1], o);
    else if (args[i].rfind("--config=", 0) == 0)
      load_config_defaults(args[i].substr(9), o);
  }

  auto add_common = [&](CLI::App* sub, bool with_sampling) {
    sub->add_option("--group", o.group, "group spec (see `threefold groups`)");
    sub->add_option("--cocycle", o.cocycle, "cocycle preset name");
    sub->add_option("--cocycle-file", o.cocycle_file, "JSON cocycle file");
    sub->add_option("--trs", o.trs, "none|plus|minus");
    sub->add_option("--dl", o.dl, "left environment dimension d_L");
    sub->add_option("--dr", o.dr, "right environment dimension d_R");
    if (with_sampling) {
      sub->add_option("--samples", o.samples, "number of Monte Carlo samples");
    }
    sub->add_option("--seed", o.seed, "base seed for all randomness");
    sub->add_option("--out", o.out, "output path (default: stdout)");
    sub->add_option("--format", o.format, "csv|json");
    sub->add_option("--config", o.config_path, "JSON config file with the same keys");
  };

  CLI::App* groups = app.add_subcommand("groups", "list group and cocycle presets");
  groups->add_option("--out", o.out, "output path");
  CLI::App* irreps = app.add_subcommand(
      "irreps", "irrep dimensions, indicators and pairings");
  add_common(irreps, false);
  CLI::App* predict = app.add_subcommand(
      "predict", "the predicted LOE/LUE/LSE block decomposition");
  add_common(predict, false);
  CLI::App* sample = app.add_subcommand(
      "sample", "write per-sample per-block entanglement spectra");
  add_common(sample, true);
  CLI::App* verify = app.add_subcommand(
      "verify", "statistically verify the prediction against matched oracles");
  add_common(verify, true);
  CLI::App* table1 = app.add_subcommand(
      "reproduce-table1", "predict and verify the five G0 = Z2 ensemble rows");
  table1->add_option("--samples", o.samples, "samples per row");
  table1->add_option("--seed", o.seed, "base seed");
  table1->add_option("--out", o.out, "output path");
  table1->add_option("--config", o.config_path, "JSON config file");
  CLI::App* hist = app.add_subcommand(
      "hist", "binned per-block eigenvalue histograms for plotting");
  add_common(hist, true);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints usage/help text
    return rc == 0 ? 0 : 2;
  }

  if (groups->parsed()) return cmd_groups(o);
  if (irreps->parsed()) return cmd_irreps(o);
  if (predict->parsed()) return cmd_predict(o, predict->count("--format") > 0);
  if (sample->parsed()) return cmd_sample(o);
  if (verify->parsed()) return cmd_verify(o);
  if (table1->parsed()) return cmd_reproduce_table1(o);
  if (hist->parsed()) return cmd_hist(o);
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args);
}

}  // namespace threefold::cli
