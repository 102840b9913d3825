#include "fcprobe/tools/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "fcprobe/model_io.hpp"
#include "fcprobe/tools/http_server.hpp"
#include "fcprobe/tools/probe_service.hpp"

namespace fcprobe::tools {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  const auto bytes = read_file(path);
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": malformed JSON: " + e.what());
  }
}

// Writes to path, or to out when path is empty.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  body(f);
  f.flush();
  if (!f) throw IoError("error writing " + path);
}

void write_double(std::ostream& os, double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  os.write(buf, r.ptr - buf);
}

struct StftFlags {
  std::size_t win = SpectrogramParams{}.win;
  std::size_t hop = SpectrogramParams{}.hop;
  std::size_t fft = SpectrogramParams{}.fft_len;

  void add(CLI::App* app) {
    app->add_option("--win", win, "STFT window length in samples")->capture_default_str();
    app->add_option("--hop", hop, "STFT hop in samples")->capture_default_str();
    app->add_option("--fft", fft, "FFT length (power of two)")->capture_default_str();
  }
  SpectrogramParams params() const { return {win, hop, fft}; }
};

struct Options {
  std::string model;
  std::string csv;
  std::string var;
  bool with_bias = false;
  std::string latent;
  std::string splice;
  std::string out_path;
  std::string spectrogram_csv;
  std::string spectrum_csv;
  std::size_t window = 64;
  std::string out_dir;
  std::string columns;
  std::string mode = "weights";
  bool log_spectra = false;
  std::string mds_csv;
  std::size_t dims = 2;
  std::string distances;
  std::string spec;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  StftFlags stft;
};

void cmd_stats(const Options& o, std::ostream& out) {
  const auto params = load_weights(o.model);
  const auto stats = mean_abs_weights(params);
  emit(o.csv, out, [&](std::ostream& os) {
    os << "variable,kind,index,mean_abs_weight\r\n";
    for (std::size_t i = 0; i < stats.variables.size(); ++i) {
      const auto& v = stats.variables[i];
      os << v.to_string() << ',' << to_string(v.kind) << ',' << v.index << ',';
      write_double(os, stats.mean_abs_weight[i]);
      os << "\r\n";
    }
  });
}

void cmd_profile(const Options& o, std::ostream& out) {
  const auto v = parse_variable_ref(o.var);
  const auto params = load_weights(o.model);
  const auto prof = temporal_profile(v, params);
  emit(o.csv, out, [&](std::ostream& os) {
    os << "t,mean_abs_weight\r\n";
    for (std::size_t t = 0; t < prof.size(); ++t) {
      os << t << ',';
      write_double(os, prof[t]);
      os << "\r\n";
    }
  });
}

void cmd_gen(const Options& o, std::ostream& out) {
  const int sources = !o.var.empty() + !o.latent.empty() + !o.splice.empty();
  if (sources != 1) throw UsageError("gen: give exactly one of --var, --latent, --splice");
  if (o.with_bias && o.var.empty()) throw UsageError("gen: --with-bias applies only to --var");
  const auto stft = o.stft.params();
  stft.validate();

  json body;
  if (!o.var.empty()) {
    body = {{"variable", o.var}, {"include_bias", o.with_bias}};
  } else if (!o.latent.empty()) {
    body = {{"latent", read_json_file(o.latent)}};
  } else {
    body = read_json_file(o.splice);
    if (!body.is_object() || !body.contains("columns")) throw ValidationError(o.splice + ": columns: missing");
  }
  const ProbeService service(load_weights(o.model), o.model);
  const auto w = service.waveform_for(body);
  write_wav(w, o.out_path);
  if (!o.spectrogram_csv.empty() || !o.spectrum_csv.empty()) {
    const auto s = spectrogram(w, stft);
    if (!o.spectrogram_csv.empty()) emit(o.spectrogram_csv, out, [&](std::ostream& os) { write_csv(os, s); });
    if (!o.spectrum_csv.empty()) {
      const auto avg = averaged_spectrum(s);
      emit(o.spectrum_csv, out, [&](std::ostream& os) {
        os << "hz,magnitude\r\n";
        const double last = static_cast<double>(avg.values.size() - 1);
        for (std::size_t j = 0; j < avg.values.size(); ++j) {
          write_double(os, avg.max_hz * static_cast<double>(j) / last);
          os << ',';
          write_double(os, avg.values[j]);
          os << "\r\n";
        }
      });
    }
  }
  out << "wrote " << o.out_path << " (" << w.samples.size() << " samples, " << w.sample_rate << " Hz)\n";
}

void cmd_sweep(const Options& o, std::ostream& out) {
  const auto spec = splice_spec_from_json(read_json_file(o.splice));
  const auto params = load_weights(o.model);
  const auto runs = channel_window_sweep(spec, o.window, params);
  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  if (ec) throw IoError("cannot create " + o.out_dir + ": " + ec.message());
  for (const auto& r : runs) {
    const auto name = "window_" + std::to_string(r.window.start) + "_" + std::to_string(r.window.end()) + ".wav";
    write_wav(r.waveform, std::filesystem::path(o.out_dir) / name);
  }
  out << "wrote " << runs.size() << " files to " << o.out_dir << "\n";
}

void cmd_correlate(const Options& o, std::ostream& out) {
  const auto columns = labeled_columns_from_json(read_json_file(o.columns));
  CorrelationOptions opts;
  opts.mode = parse_correlation_mode(o.mode);
  opts.log_spectra = o.log_spectra;
  opts.stft = o.stft.params();
  opts.stft.validate();
  if (o.log_spectra && opts.mode != CorrelationMode::spectra) throw UsageError("correlate: --log needs --mode spectra");
  const auto params = load_weights(o.model);
  const auto r = correlate_columns(columns, params, opts);
  emit(o.csv, out, [&](std::ostream& os) { write_csv(os, r); });
  if (!o.mds_csv.empty()) {
    const auto e = classical_mds(to_distance(r), o.dims);
    emit(o.mds_csv, out, [&](std::ostream& os) { write_csv(os, e); });
  }
}

void cmd_mds(const Options& o, std::ostream& out) {
  std::ifstream in(o.distances, std::ios::binary);
  if (!in) throw IoError("cannot open " + o.distances + " for reading");
  const auto d = read_labeled_matrix_csv(in);
  const auto e = classical_mds(d, o.dims);
  emit(o.csv, out, [&](std::ostream& os) { write_csv(os, e); });
}

void cmd_fixture(const Options& o, std::ostream& out) {
  const auto spec = o.spec.empty() ? default_fixture_spec() : fixture_spec_from_json(read_json_file(o.spec));
  save_weights(make_fixture(spec), o.out_path);
  out << "wrote " << o.out_path << "\n";
}

void cmd_serve(const Options& o, std::ostream& out) {
  const ProbeService service(load_weights(o.model), o.model);
  HttpServer server(service, {o.host, o.port, o.static_dir});
  const int port = server.bind();
  out << "listening on http://" << o.host << ":" << port << std::endl;
  server.listen();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Probe the fully connected layer of a WaveGAN-style generator", "fcprobe"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  auto model_opt = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "FCPW weight file")->required();
  };

  auto* stats = app.add_subcommand("stats", "Mean absolute FC weight per latent variable, codes first");
  model_opt(stats);
  stats->add_option("--csv", o.csv, "Write CSV here instead of stdout");

  auto* profile = app.add_subcommand("profile", "Mean absolute weight per time step for one variable");
  model_opt(profile);
  profile->add_option("--var", o.var, "Variable, e.g. code:3")->required();
  profile->add_option("--csv", o.csv, "Write CSV here instead of stdout");

  auto* gen = app.add_subcommand("gen", "Generate audio from a variable, latent or splice");
  model_opt(gen);
  gen->add_option("--var", o.var, "Variable whose weight matrix drives the conv stack");
  gen->add_flag("--with-bias", o.with_bias, "Add the FC bias (same as a one-hot latent)");
  gen->add_option("--latent", o.latent, "Latent JSON file");
  gen->add_option("--splice", o.splice, "SpliceSpec JSON file");
  gen->add_option("--out", o.out_path, "Output WAV")->required();
  gen->add_option("--spectrogram", o.spectrogram_csv, "Full-resolution spectrogram CSV");
  gen->add_option("--spectrum", o.spectrum_csv, "Averaged 1000-point spectrum CSV");
  o.stft.add(gen);

  auto* sweep = app.add_subcommand("sweep", "One WAV per channel window of a splice");
  model_opt(sweep);
  sweep->add_option("--splice", o.splice, "SpliceSpec JSON file")->required();
  sweep->add_option("--window", o.window, "Channels per window")->capture_default_str();
  sweep->add_option("--out-dir", o.out_dir, "Output directory")->required();

  auto* correlate = app.add_subcommand("correlate", "Pearson correlation between FC columns");
  model_opt(correlate);
  correlate->add_option("--columns", o.columns, "JSON list of labeled column refs")->required();
  correlate->add_option("--mode", o.mode, "weights or spectra")
      ->check(CLI::IsMember({"weights", "spectra"}))
      ->capture_default_str();
  correlate->add_flag("--log", o.log_spectra, "Correlate log10 spectra");
  correlate->add_option("--csv", o.csv, "Write the matrix here instead of stdout");
  correlate->add_option("--mds-csv", o.mds_csv, "Also write an MDS embedding of 1 - r");
  correlate->add_option("--dims", o.dims, "MDS dimensions")->capture_default_str();
  o.stft.add(correlate);

  auto* mds = app.add_subcommand("mds", "Classical MDS of a labeled distance matrix");
  mds->add_option("--distances", o.distances, "Distance matrix CSV")->required();
  mds->add_option("--csv", o.csv, "Write the embedding here instead of stdout");
  mds->add_option("--dims", o.dims, "Output dimensions")->capture_default_str();

  auto* fixture = app.add_subcommand("fixture", "Write a synthetic structured model");
  fixture->add_option("--spec", o.spec, "Fixture spec JSON (default: two families, seed 1)");
  fixture->add_option("--out", o.out_path, "Output FCPW file")->required();

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  model_opt(serve);
  serve->add_option("--port", o.port, "Port (0 picks a free one)")->capture_default_str();
  serve->add_option("--host", o.host, "Bind address")->capture_default_str();
  serve->add_option("--static", o.static_dir, "Directory served at /");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fcprobe: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (stats->parsed()) cmd_stats(o, out);
    else if (profile->parsed()) cmd_profile(o, out);
    else if (gen->parsed()) cmd_gen(o, out);
    else if (sweep->parsed()) cmd_sweep(o, out);
    else if (correlate->parsed()) cmd_correlate(o, out);
    else if (mds->parsed()) cmd_mds(o, out);
    else if (fixture->parsed()) cmd_fixture(o, out);
    else if (serve->parsed()) cmd_serve(o, out);
  } catch (const UsageError& e) {
    err << "fcprobe: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "fcprobe: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "fcprobe: " << e.what() << "\n";
    return kExitData;
  } catch (const json::exception& e) {
    err << "fcprobe: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace fcprobe::tools
