#include "glebd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "glebd/errors.hpp"

namespace glebd {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void write_header(std::ostream& out, const Metadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << " = " << value
                                            << "\n";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("malformed number '" + s + "' in " + where);
  }
}

}  // namespace

void write_kernel_curve_csv(const std::string& path, const KernelCurve& curve,
                            const Metadata& meta) {
  std::ofstream out = open_out(path);
  write_header(out, meta);
  const int d = curve.d;
  out << "t";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out << ",chi[" << i << "][" << j << "]";
  out << ",provenance\n";
  const std::string tag = provenance_tag(curve);
  for (std::size_t r = 0; r < curve.t.size(); ++r) {
    out << format_double(curve.t[r]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out << "," << format_double(curve.value[r](i, j));
    out << "," << tag << "\n";
  }
}

void write_multi_curve_csv(const std::string& path,
                           const std::vector<KernelCurve>& curves,
                           const std::vector<std::string>& labels,
                           const Metadata& meta) {
  if (curves.empty()) throw ValidationError("write_multi_curve_csv: no curves");
  if (curves.size() != labels.size())
    throw ValidationError("write_multi_curve_csv: labels do not match curves");
  for (const auto& c : curves) {
    if (c.d != 1)
      throw ValidationError("write_multi_curve_csv: scalar curves only");
    if (c.t != curves[0].t)
      throw ValidationError("write_multi_curve_csv: curves on different grids");
  }
  std::ofstream out = open_out(path);
  write_header(out, meta);
  out << "t";
  for (const auto& l : labels) out << "," << l;
  out << "\n";
  for (std::size_t r = 0; r < curves[0].t.size(); ++r) {
    out << format_double(curves[0].t[r]);
    for (const auto& c : curves) out << "," << format_double(c.value[r](0, 0));
    out << "\n";
  }
}

void write_correlation_csv(const std::string& path,
                           const CorrelationSeries& series,
                           const Metadata& meta) {
  std::ofstream out = open_out(path);
  write_header(out, meta);
  out << "lag,value,stderr,n\n";
  for (std::size_t i = 0; i < series.lag.size(); ++i)
    out << format_double(series.lag[i]) << ","
        << format_double(series.value[i]) << ","
        << format_double(series.std_error[i]) << "," << series.n << "\n";
}

void write_trajectory_csv(const std::string& path,
                          const TrajectoryEnsemble& ensemble,
                          const Metadata& meta) {
  std::ofstream out = open_out(path);
  write_header(out, meta);
  out << "traj_index,t";
  for (const auto& name : ensemble.channels) {
    if (ensemble.d == 1) {
      out << "," << name;
    } else {
      for (int p = 0; p < ensemble.d; ++p) out << "," << name << "[" << p
                                               << "]";
    }
  }
  out << "\n";
  const std::size_t nrec = ensemble.t.size();
  for (int k = 0; k < ensemble.ntraj; ++k)
    for (std::size_t r = 0; r < nrec; ++r) {
      out << k << "," << format_double(ensemble.t[r]);
      for (std::size_t c = 0; c < ensemble.channels.size(); ++c)
        for (int p = 0; p < ensemble.d; ++p)
          out << ","
              << format_double(
                     ensemble.series[c][k][r * ensemble.d + p]);
      out << "\n";
    }
}

TrajectoryEnsemble read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open for reading: " + path);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = split_csv(line);
    break;
  }
  if (header.size() < 3 || header[0] != "traj_index" || header[1] != "t")
    throw ValidationError(
        "trajectory CSV must start with columns traj_index,t");
  // Component columns "name[p]" fold back into channel "name".
  std::vector<std::string> channels;
  int d = 1;
  {
    std::vector<std::pair<std::string, int>> cols;
    for (std::size_t c = 2; c < header.size(); ++c) {
      std::string name = header[c];
      int comp = 0;
      const auto lb = name.find('[');
      if (lb != std::string::npos && name.back() == ']') {
        comp = static_cast<int>(
            parse_double(name.substr(lb + 1, name.size() - lb - 2), path));
        name = name.substr(0, lb);
      }
      cols.emplace_back(name, comp);
    }
    for (const auto& [name, comp] : cols) {
      if (channels.empty() || channels.back() != name)
        channels.push_back(name);
      d = std::max(d, comp + 1);
    }
    if (cols.size() != channels.size() * static_cast<std::size_t>(d))
      throw ValidationError("trajectory CSV has ragged channel columns");
  }

  std::vector<std::vector<double>> times;           // per traj
  std::vector<std::vector<std::vector<double>>> data;  // [traj][chan][t*d]
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size())
      throw ValidationError("trajectory CSV row has wrong column count");
    const long long k =
        static_cast<long long>(parse_double(fields[0], path));
    if (k < 0 || k > 1000000)
      throw ValidationError("trajectory CSV: traj_index out of range");
    if (static_cast<std::size_t>(k) >= times.size()) {
      times.resize(k + 1);
      data.resize(k + 1,
                  std::vector<std::vector<double>>(channels.size()));
    }
    times[k].push_back(parse_double(fields[1], path));
    for (std::size_t c = 0; c < channels.size(); ++c)
      for (int p = 0; p < d; ++p)
        data[k][c].push_back(parse_double(fields[2 + c * d + p], path));
  }
  if (times.empty()) throw ValidationError("trajectory CSV has no data rows");
  for (const auto& tk : times)
    if (tk.size() != times[0].size() || tk != times[0])
      throw ValidationError(
          "trajectory CSV trajectories have inconsistent time grids");

  TrajectoryEnsemble ens;
  ens.t = times[0];
  ens.channels = channels;
  ens.d = d;
  ens.ntraj = static_cast<int>(times.size());
  ens.dt_record = ens.t.size() > 1 ? ens.t[1] - ens.t[0] : 0.0;
  ens.dt = ens.dt_record;
  ens.model = "csv:" + path;
  ens.series.assign(channels.size(),
                    std::vector<std::vector<double>>(ens.ntraj));
  for (int k = 0; k < ens.ntraj; ++k)
    for (std::size_t c = 0; c < channels.size(); ++c)
      ens.series[c][k] = std::move(data[k][c]);
  return ens;
}

std::vector<std::pair<std::string, std::string>> read_key_value_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open for reading: " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return (b == std::string::npos) ? std::string()
                                    : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line without '=': " + t);
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<double, double>> read_table_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open for reading: " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  bool first_data = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2)
      throw ValidationError("table CSV must have exactly two columns");
    if (first_data) {
      first_data = false;
      // Tolerate one header row of non-numeric labels.
      try {
        rows.emplace_back(parse_double(fields[0], path),
                          parse_double(fields[1], path));
      } catch (const ValidationError&) {
      }
      continue;
    }
    rows.emplace_back(parse_double(fields[0], path),
                      parse_double(fields[1], path));
  }
  if (rows.empty()) throw ValidationError("table CSV has no numeric rows");
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out = open_out(path);
  out << content;
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace glebd
