#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ro3/catalyst.hpp"
#include "ro3/deblur.hpp"
#include "ro3/image_io.hpp"
#include "ro3/metrics.hpp"
#include "ro3/ro3.hpp"
#include "ro3/threshold.hpp"

namespace ro3::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kBadArguments = 2,
  kMalformedInput = 3,
};

struct Config {
  std::string input;
  std::string output;
  std::string basis;
  double ap = kDefaultAnchor;
  bool ap_given = false;
  int levels = 1;
  int factor = 2;
  std::string codec = "store";
  int quality = 75;
  std::string method = "soft";
  bool deblur = false;
  bool auto_deblur = false;
  bool literal_soft = false;
  std::string detail_gain = "faithful";
  std::uint64_t seed = 0;
  double noise_mean = 0.0;
  double noise_std = 0.02;
  std::string ref;
  std::string test;
  std::string compressed;
  double max_value = kMax8Bit;
  int channel = 0;
};

inline DetailGain parse_gain(const std::string& s) {
  return s == "corrected" ? DetailGain::Corrected : DetailGain::Faithful;
}

inline std::string format_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["mse"] = r.mse;
  if (std::isinf(r.psnr_db)) {
    j["psnr_db"] = "inf";
  } else {
    j["psnr_db"] = r.psnr_db;
  }
  j["mae"] = r.mae;
  if (r.cr) j["cr"] = *r.cr;
  if (r.pss_percent) j["pss_percent"] = *r.pss_percent;
  return j.dump();
}

inline std::string format_histogram_csv(const Histogram& h) {
  std::string out = "bin,count\n";
  for (std::size_t i = 0; i < h.bins.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(h.bins[i]) + "\n";
  }
  return out;
}

/// Loads an image file, or decodes an Ro3 container into an image.
inline ImageBuf load_any(const std::string& path, const CodecRegistry& registry) {
  const auto bytes = read_file(path);
  if (is_container(bytes)) return decode(parse(bytes), registry);
  return decode_image(bytes);
}

namespace detail {

inline Ro3Params sr_params(const Config& cfg) {
  Ro3Params p;
  p.ap = cfg.ap;
  p.basis = WaveletBasis::from_name(cfg.basis.empty() ? "haar" : cfg.basis);
  p.detail_gain = parse_gain(cfg.detail_gain);
  return p;
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline void run_sr(const Config& cfg) {
  const auto img = load_image(cfg.input);
  const auto params = sr_params(cfg);
  save_image(cfg.factor == 4 ? superresolve_twice(img, params) : superresolve_once(img, params),
             cfg.output);
}

inline void run_encode(const Config& cfg, const CodecRegistry& registry) {
  const auto& codec = registry.get(codec_id_from_name(cfg.codec));
  const auto img = load_image(cfg.input);
  const auto basis = WaveletBasis::from_name(cfg.basis.empty() ? "haar" : cfg.basis);
  write_file(cfg.output, serialize(encode(img, basis, codec, cfg.quality, cfg.ap)));
}

inline void run_decode(const Config& cfg, const CodecRegistry& registry) {
  const auto c = parse(read_file(cfg.input));
  auto params = params_for(c);
  if (cfg.ap_given) params.ap = cfg.ap;
  params.detail_gain = parse_gain(cfg.detail_gain);
  const bool sharpen = cfg.deblur || (cfg.auto_deblur && c.deblur_recommended());
  save_image(decode(c, registry, params, sharpen), cfg.output);
}

inline void run_denoise(const Config& cfg) {
  const auto img = load_image(cfg.input);
  if (cfg.method == "ro3") {
    save_image(denoise_ro3(img, sr_params(cfg)), cfg.output);
    return;
  }
  DenoiseOptions opts;
  opts.mode = cfg.method == "hard" ? ThresholdMode::Hard : ThresholdMode::Soft;
  opts.levels = cfg.levels;
  opts.soft_rule = cfg.literal_soft ? SoftRule::Literal : SoftRule::Symmetric;
  const auto basis = WaveletBasis::from_name(cfg.basis.empty() ? "db4" : cfg.basis);
  auto out = denoise_threshold(img, basis, opts);
  save_image(cfg.deblur ? deblur(out) : out, cfg.output);
}

inline void run_metrics(const Config& cfg, const CodecRegistry& registry, std::ostream& out) {
  const auto ref = load_any(cfg.ref, registry);
  const auto test_bytes = read_file(cfg.test);
  const bool test_is_container = is_container(test_bytes);
  const auto test = test_is_container ? decode(parse(test_bytes), registry)
                                      : decode_image(test_bytes);
  auto report = compute_metrics(ref, test, cfg.max_value);
  std::optional<std::uint64_t> compressed;
  if (!cfg.compressed.empty()) {
    compressed = std::filesystem::file_size(cfg.compressed);
  } else if (test_is_container) {
    compressed = test_bytes.size();
  }
  if (compressed) {
    const std::uint64_t raw = ref.orig_width() * ref.orig_height() * ref.channels();
    attach_sizes(report, raw, *compressed);
  }
  out << format_json(report) << "\n";
}

inline void run_histogram(const Config& cfg, std::ostream& out) {
  const auto img = load_image(cfg.input);
  if (static_cast<std::size_t>(cfg.channel) >= img.channels()) {
    throw ArgumentError("histogram: channel out of range");
  }
  write_text(cfg.output, format_histogram_csv(histogram(img.plane(cfg.channel))), out);
}

inline void run_noise(const Config& cfg) {
  const auto img = load_image(cfg.input);
  save_image(add_gaussian_noise(img, cfg.noise_mean, cfg.noise_std, cfg.seed), cfg.output);
}

}  // namespace detail

/// Parses argv and runs one subcommand. Never throws; returns an exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  Config cfg;
  CLI::App app{"Wavelet Rule-of-Three toolkit: superresolution, compression catalyst, "
               "denoising, deblurring and quality metrics",
               "ro3tool"};
  app.require_subcommand(1, 1);

  const auto bases = CLI::IsMember({"haar", "db1", "db4", "daub4"});
  const auto gains = CLI::IsMember({"faithful", "corrected"});

  auto add_io = [&](CLI::App* sub, bool need_output) {
    sub->add_option("-i,--input", cfg.input, "Input image (PGM/PPM/PNG/JPEG)")->required();
    auto* o = sub->add_option("-o,--output", cfg.output, "Output path");
    if (need_output) o->required();
  };
  auto add_ro3 = [&](CLI::App* sub) {
    sub->add_option("--ap", cfg.ap, "Anchoring parameter (> 0)")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { cfg.ap_given = true; });
    sub->add_option("--detail-gain", cfg.detail_gain, "faithful | corrected")->check(gains);
  };

  auto* sr = app.add_subcommand("sr", "Superresolve by 2x or 4x per axis");
  add_io(sr, true);
  sr->add_option("--factor", cfg.factor, "2 or 4")->check(CLI::IsMember({2, 4}));
  sr->add_option("--basis", cfg.basis, "haar | db4 (default haar)")->check(bases);
  add_ro3(sr);

  auto* enc = app.add_subcommand("encode", "Compress through the Ro3 catalyst");
  add_io(enc, true);
  enc->add_option("--codec", cfg.codec, "store | jpeg | png | jp2")
      ->check(CLI::IsMember({"store", "jpeg", "jpg", "png", "jp2", "jpeg2000"}));
  enc->add_option("--quality", cfg.quality, "Back-end quality 1..100")->check(CLI::Range(1, 100));
  enc->add_option("--basis", cfg.basis, "haar | db4 (default haar)")->check(bases);
  enc->add_option("--ap", cfg.ap, "Anchoring parameter recorded in the file")
      ->check(CLI::PositiveNumber);

  auto* dec = app.add_subcommand("decode", "Decompress an Ro3 container");
  add_io(dec, true);
  dec->add_flag("--deblur", cfg.deblur, "Apply the deblurring mask after decoding");
  dec->add_flag("--auto-deblur", cfg.auto_deblur,
                "Deblur only when the file recommends it (small originals)");
  add_ro3(dec);

  auto* den = app.add_subcommand("denoise", "Wavelet thresholding or Ro3 denoising");
  add_io(den, true);
  den->add_option("--method", cfg.method, "soft | hard | ro3")
      ->check(CLI::IsMember({"soft", "hard", "ro3"}));
  den->add_option("--basis", cfg.basis, "haar | db4 (default db4 for soft/hard, haar for ro3)")
      ->check(bases);
  den->add_option("--levels", cfg.levels, "Decomposition levels")->check(CLI::Range(1, 16));
  den->add_flag("--deblur", cfg.deblur, "Apply the deblurring mask afterwards");
  den->add_flag("--literal-soft", cfg.literal_soft,
                "Soft rule that subtracts lambda from negative survivors too");
  add_ro3(den);

  auto* deb = app.add_subcommand("deblur", "Apply the fixed 7x7 deblurring mask");
  add_io(deb, true);

  auto* met = app.add_subcommand("metrics", "MSE/PSNR/MAE (+CR/PSS) as one JSON line");
  met->add_option("--ref", cfg.ref, "Reference image")->required();
  met->add_option("--test", cfg.test, "Test image or Ro3 container")->required();
  met->add_option("--compressed", cfg.compressed, "Compressed file used for CR/PSS");
  met->add_option("--max", cfg.max_value, "Peak value MAX_I")->check(CLI::PositiveNumber);

  auto* his = app.add_subcommand("histogram", "256-bin histogram as CSV");
  add_io(his, false);
  his->add_option("--channel", cfg.channel, "Channel index")->check(CLI::Range(0, 2));

  auto* noi = app.add_subcommand("noise", "Add seeded Gaussian noise (normalized scale)");
  add_io(noi, true);
  noi->add_option("--mean", cfg.noise_mean, "Noise mean on the [0,1] scale");
  noi->add_option("--std", cfg.noise_std, "Noise std on the [0,1] scale")
      ->check(CLI::NonNegativeNumber);
  noi->add_option("--seed", cfg.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    // Top level help lists every subcommand together with its flags.
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kBadArguments;
  }

  try {
    const auto registry = default_registry();
    if (*sr) detail::run_sr(cfg);
    else if (*enc) detail::run_encode(cfg, registry);
    else if (*dec) detail::run_decode(cfg, registry);
    else if (*den) detail::run_denoise(cfg);
    else if (*deb) save_image(deblur(load_image(cfg.input)), cfg.output);
    else if (*met) detail::run_metrics(cfg, registry, out);
    else if (*his) detail::run_histogram(cfg, out);
    else if (*noi) detail::run_noise(cfg);
    return kOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformedInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformedInput;
  }
}

}  // namespace ro3::cli
