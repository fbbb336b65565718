#include "hslab/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hs::io {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error("io: expected [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io: cannot open file for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io: cannot open file for writing: " + path);
    out << content;
    if (!out) throw Error("io: write failed: " + path);
}

std::string curve_to_json(const MarkerCurve& curve) {
    json j;
    j["markers"] = json::array();
    for (const Complex& m : curve.markers()) j["markers"].push_back(complex_to_json(m));
    return j.dump();
}

MarkerCurve curve_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("markers") || !j["markers"].is_array()) {
        throw Error("io: curve JSON must contain a \"markers\" array");
    }
    std::vector<Complex> markers;
    for (const auto& e : j["markers"]) markers.push_back(complex_from_json(e));
    return MarkerCurve::fromMarkers(std::move(markers));
}

MarkerCurve load_curve(const std::string& path) { return curve_from_json(read_file(path)); }

void save_curve(const MarkerCurve& curve, const std::string& path) {
    write_file(path, curve_to_json(curve));
}

std::string grid_to_csv(const ScalarGrid& grid) {
    std::ostringstream out;
    out << "nx,ny,h,ox,oy\n";
    out << grid.nx << ',' << grid.ny << ',' << format_double(grid.h) << ','
        << format_double(grid.origin.real()) << ',' << format_double(grid.origin.imag())
        << '\n';
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            out << format_double(grid.at(i, j)) << '\n';
        }
    }
    return out.str();
}

ScalarGrid grid_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.rfind("nx,ny,h,ox,oy", 0) != 0) {
        throw Error("io: grid CSV must start with header nx,ny,h,ox,oy");
    }
    std::string meta;
    if (!std::getline(in, meta)) throw Error("io: grid CSV missing metadata row");
    int nx = 0, ny = 0;
    double h = 0.0, ox = 0.0, oy = 0.0;
    if (std::sscanf(meta.c_str(), "%d,%d,%lf,%lf,%lf", &nx, &ny, &h, &ox, &oy) != 5) {
        throw Error("io: grid CSV metadata row malformed: " + meta);
    }
    ScalarGrid grid(Complex(ox, oy), h, nx, ny);
    size_t count = 0;
    double v = 0.0;
    std::string tok;
    while (in >> tok) {
        // values may be newline- or comma-separated
        std::istringstream ts(tok);
        std::string piece;
        while (std::getline(ts, piece, ',')) {
            if (piece.empty()) continue;
            if (std::sscanf(piece.c_str(), "%lf", &v) != 1) {
                throw Error("io: grid CSV bad value: " + piece);
            }
            if (count >= grid.values.size()) throw Error("io: grid CSV has too many values");
            grid.values[count++] = v;
        }
    }
    if (count != grid.values.size()) {
        throw Error("io: grid CSV value count mismatch: expected " +
                    std::to_string(grid.values.size()) + ", got " + std::to_string(count));
    }
    return grid;
}

ScalarGrid load_grid(const std::string& path) { return grid_from_csv(read_file(path)); }

void save_grid(const ScalarGrid& grid, const std::string& path) {
    write_file(path, grid_to_csv(grid));
}

std::string schwarz_to_json(const cauchy::SchwarzData& sd) {
    json j;
    j["a"] = complex_to_json(sd.residue);
    j["tail"] = json::array();
    for (const Complex& b : sd.tail.coeffs) j["tail"].push_back(complex_to_json(b));
    j["curve"] = json::parse(curve_to_json(sd.curve));
    j["g"] = json::array();
    for (const Complex& g : sd.boundary_datum) j["g"].push_back(complex_to_json(g));
    return j.dump();
}

cauchy::SchwarzData schwarz_from_json(const std::string& text) {
    json j = json::parse(text);
    MarkerCurve curve = curve_from_json(j.at("curve").dump());
    std::vector<Complex> g;
    for (const auto& e : j.at("g")) g.push_back(complex_from_json(e));
    cauchy::LaurentTail tail;
    for (const auto& e : j.at("tail")) tail.coeffs.push_back(complex_from_json(e));
    cauchy::SchwarzData sd{std::move(curve), std::move(g), complex_from_json(j.at("a")),
                           std::move(tail)};
    return sd;
}

std::string quadrature_to_json(const quad::QuadratureData& qd) {
    json j;
    j["nodes"] = json::array();
    for (const Complex& a : qd.nodes) j["nodes"].push_back(complex_to_json(a));
    j["mult"] = qd.multiplicities;
    j["coeffs"] = json::array();
    for (const auto& row : qd.coefficients) {
        json r = json::array();
        for (const Complex& c : row) r.push_back(complex_to_json(c));
        j["coeffs"].push_back(r);
    }
    return j.dump();
}

quad::QuadratureData quadrature_from_json(const std::string& text) {
    json j = json::parse(text);
    quad::QuadratureData qd;
    for (const auto& e : j.at("nodes")) qd.nodes.push_back(complex_from_json(e));
    qd.multiplicities = j.at("mult").get<std::vector<int>>();
    for (const auto& row : j.at("coeffs")) {
        std::vector<Complex> r;
        for (const auto& e : row) r.push_back(complex_from_json(e));
        qd.coefficients.push_back(std::move(r));
    }
    qd.validate();
    return qd;
}

std::string moments_to_csv(const moments::MomentSeries& series) {
    std::ostringstream out;
    out << "t,k,re,im\n";
    for (size_t ti = 0; ti < series.times.size(); ++ti) {
        for (size_t k = 0; k < series.values[ti].size(); ++k) {
            out << format_double(series.times[ti]) << ',' << k << ','
                << format_double(series.values[ti][k].real()) << ','
                << format_double(series.values[ti][k].imag()) << '\n';
        }
    }
    return out.str();
}

moments::MomentSeries moments_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,k,re,im", 0) != 0) {
        throw Error("io: moments CSV must start with header t,k,re,im");
    }
    moments::MomentSeries series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double t = 0.0, re = 0.0, im = 0.0;
        int k = 0;
        if (std::sscanf(line.c_str(), "%lf,%d,%lf,%lf", &t, &k, &re, &im) != 4) {
            throw Error("io: moments CSV bad row: " + line);
        }
        if (series.times.empty() || series.times.back() != t) {
            series.times.push_back(t);
            series.values.emplace_back();
        }
        if (static_cast<int>(series.values.back().size()) != k) {
            throw Error("io: moments CSV rows out of order at t=" + std::to_string(t));
        }
        series.values.back().emplace_back(re, im);
    }
    return series;
}

std::string frame_to_json(double t, const MarkerCurve* boundary) {
    json j;
    j["t"] = t;
    if (boundary != nullptr) {
        j["boundary"] = json::parse(curve_to_json(*boundary));
        j["area"] = signed_area(*boundary);
    } else {
        j["boundary"] = nullptr;
        j["area"] = 0.0;
    }
    return j.dump();
}

std::string frames_to_svg(const std::vector<std::pair<double, const MarkerCurve*>>& frames,
                          const Box& box) {
    std::ostringstream out;
    const double scale = 600.0 / std::max(box.width(), box.height());
    const double w = box.width() * scale;
    const double hgt = box.height() * scale;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << hgt
        << "\" viewBox=\"0 0 " << w << ' ' << hgt << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const int n = static_cast<int>(frames.size());
    for (int f = 0; f < n; ++f) {
        if (frames[f].second == nullptr) continue;
        const int shade = n > 1 ? 200 - (170 * f) / (n - 1) : 30;
        out << "<polygon fill=\"none\" stroke=\"rgb(" << shade << ',' << shade << ",255)\" "
            << "stroke-width=\"1\" points=\"";
        for (const Complex& m : frames[f].second->markers()) {
            const double px = (m.real() - box.xmin) * scale;
            const double py = (box.ymax - m.imag()) * scale;  // y axis up
            out << format_double(px) << ',' << format_double(py) << ' ';
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace hs::io
