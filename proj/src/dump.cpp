#include "afb/dump.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "afb/common.hpp"

namespace afb {

namespace {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  return json{{"rows", m.rows}, {"cols", m.cols}, {"re", m.re}, {"im", m.im}};
}

ComplexMatrix matrix_from_json(const json& j) {
  ComplexMatrix m(j.at("rows").get<std::size_t>(),
                  j.at("cols").get<std::size_t>());
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != m.rows * m.cols || im.size() != m.rows * m.cols)
    throw Error(ErrorCategory::format, "coefficient array size mismatch");
  m.re = re;
  m.im = im;
  return m;
}

void write_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip
  out.append(buf, res.ptr);
}

}  // namespace

void dump_filterbank_json(const Filterbank& bank, const std::string& path) {
  json j;
  j["format"] = "afb-filterbank";
  j["version"] = 1;
  j["config"] = {{"family", family_name(bank.config.family)},
                 {"n_filters", bank.config.n_filters},
                 {"kernel_len", bank.config.kernel_len},
                 {"hop", bank.config.effective_hop()},
                 {"sample_rate", bank.config.sample_rate}};
  if (bank.params) {
    j["params"] = {{"f1", bank.params->f1},
                   {"f2", bank.params->f2},
                   {"gains", bank.params->gains}};
  }
  if (!bank.analysis_window.empty()) {
    j["windows"] = {{"analysis", bank.analysis_window},
                    {"synthesis", bank.synthesis_window}};
  }
  j["synthesis_weights"] = bank.synthesis_weights;
  j["normalize_envelope"] = bank.normalize_envelope;
  j["analysis"] = matrix_to_json(bank.analysis);
  j["synthesis"] = matrix_to_json(bank.synthesis);

  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error(ErrorCategory::io, "cannot open " + path + " for write");
  f << j.dump(1, '\t') << '\n';
  if (!f) throw Error(ErrorCategory::io, "short write to " + path);
}

Filterbank load_filterbank_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCategory::io, "cannot open " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::format, path + ": " + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "afb-filterbank")
      throw Error(ErrorCategory::format, path + ": not a filterbank dump");
    Filterbank bank;
    const auto& c = j.at("config");
    bank.config.family = family_from_name(c.at("family").get<std::string>());
    bank.config.n_filters = c.at("n_filters").get<std::size_t>();
    bank.config.kernel_len = c.at("kernel_len").get<std::size_t>();
    bank.config.hop = c.at("hop").get<std::size_t>();
    bank.config.sample_rate = c.at("sample_rate").get<int>();
    if (j.contains("params")) {
      ParamSincParams p;
      p.f1 = j["params"].at("f1").get<std::vector<double>>();
      p.f2 = j["params"].at("f2").get<std::vector<double>>();
      p.gains = j["params"].at("gains").get<std::vector<double>>();
      bank.params = std::move(p);
    }
    if (j.contains("windows")) {
      bank.analysis_window =
          j["windows"].at("analysis").get<std::vector<double>>();
      bank.synthesis_window =
          j["windows"].at("synthesis").get<std::vector<double>>();
    }
    bank.synthesis_weights =
        j.at("synthesis_weights").get<std::vector<double>>();
    bank.normalize_envelope = j.at("normalize_envelope").get<bool>();
    bank.analysis = matrix_from_json(j.at("analysis"));
    bank.synthesis = matrix_from_json(j.at("synthesis"));
    if (bank.analysis.rows != bank.config.n_filters ||
        bank.analysis.cols != bank.config.kernel_len)
      throw Error(ErrorCategory::format,
                  path + ": coefficient shape disagrees with config");
    return bank;
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::format, path + ": " + e.what());
  }
}

namespace {

void dump_matrix_text(const ComplexMatrix& m, const char* kind, bool with_im,
                      const std::string& path) {
  std::string out;
  out.reserve(m.rows * m.cols * 20);
  out += "afb-tf 1\nkind ";
  out += kind;
  out += "\nrows " + std::to_string(m.rows) + " cols " + std::to_string(m.cols) +
         "\n";
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c) out += ' ';
      write_double(out, m.re[r * m.cols + c]);
      if (with_im) {
        out += ' ';
        write_double(out, m.im[r * m.cols + c]);
      }
    }
    out += '\n';
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error(ErrorCategory::io, "cannot open " + path + " for write");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error(ErrorCategory::io, "short write to " + path);
}

}  // namespace

void dump_tf_text(const TFRepresentation& rep, const std::string& path) {
  dump_matrix_text(rep.coeffs, "compl", true, path);
}

void dump_mask_text(const Mask& mask, const std::string& path) {
  dump_matrix_text(mask.data, mask_kind_name(mask.kind),
                   mask.kind != MaskKind::mag, path);
}

Mask load_mask_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCategory::io, "cannot open " + path);
  std::string magic;
  int version = 0;
  f >> magic >> version;
  if (magic != "afb-tf" || version != 1)
    throw Error(ErrorCategory::format, path + ": not a TF dump");
  std::string key, kind_name;
  f >> key >> kind_name;
  if (key != "kind")
    throw Error(ErrorCategory::format, path + ": missing kind header");
  std::size_t rows = 0, cols = 0;
  std::string rk, ck;
  f >> rk >> rows >> ck >> cols;
  if (rk != "rows" || ck != "cols" || rows == 0 || cols == 0)
    throw Error(ErrorCategory::format, path + ": bad matrix header");

  Mask m;
  m.kind = mask_kind_from_name(kind_name);
  m.data = ComplexMatrix(rows, cols);
  const bool with_im = m.kind != MaskKind::mag;
  for (std::size_t i = 0; i < rows * cols; ++i) {
    if (!(f >> m.data.re[i]))
      throw Error(ErrorCategory::format, path + ": truncated data");
    if (with_im && !(f >> m.data.im[i]))
      throw Error(ErrorCategory::format, path + ": truncated data");
    if (!std::isfinite(m.data.re[i]) || !std::isfinite(m.data.im[i]))
      throw Error(ErrorCategory::format, path + ": non-finite mask entry");
  }
  if (m.kind == MaskKind::mag)
    for (std::size_t i = 0; i < rows * cols; ++i)
      if (m.data.re[i] < 0.0)
        throw Error(ErrorCategory::format, path + ": negative mag mask entry");
  return m;
}

}  // namespace afb
