#pragma once

// Argument mini-languages and CSV plumbing for the gpur tool.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpur/label_state.hpp"

namespace gpur::cli {

inline double parse_double(const std::string &s, const std::string &what) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size() || !std::isfinite(v))
        throw std::invalid_argument("bad " + what + " '" + s + "'");
    return v;
}

// "4", "2..6", "3..49:2", "3,5,9"
inline std::vector<int> parse_int_range(const std::string &s) {
    std::vector<int> out;
    for (auto &part : detail::split(s, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(detail::parse_int(part, "integer"));
            continue;
        }
        std::string tail = part.substr(dots + 2);
        int step = 1;
        if (auto c = tail.find(':'); c != std::string::npos) {
            step = detail::parse_int(tail.substr(c + 1), "range step");
            tail = tail.substr(0, c);
        }
        int lo = detail::parse_int(part.substr(0, dots), "range start"), hi = detail::parse_int(tail, "range end");
        if (step < 1 || hi < lo)
            throw std::invalid_argument("bad range '" + part + "' (want lo..hi[:step] with lo <= hi)");
        for (int v = lo; v <= hi; v += step)
            out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument("empty integer range");
    return out;
}

// "0.99", "0.95,0.97", "0.9..1:0.01" (end included up to rounding)
inline std::vector<double> parse_double_range(const std::string &s) {
    std::vector<double> out;
    for (auto &part : detail::split(s, ',')) {
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_double(part, "number"));
            continue;
        }
        std::string tail = part.substr(dots + 2);
        auto c = tail.find(':');
        if (c == std::string::npos)
            throw std::invalid_argument("real range '" + part + "' needs a step, e.g. 0.9..1:0.01");
        double lo = parse_double(part.substr(0, dots), "range start");
        double hi = parse_double(tail.substr(0, c), "range end");
        double step = parse_double(tail.substr(c + 1), "range step");
        if (!(step > 0) || hi < lo)
            throw std::invalid_argument("bad range '" + part + "'");
        long n = std::lround(std::floor((hi - lo) / step + 1e-9));
        for (long i = 0; i <= n; i++)
            out.push_back(lo + double(i) * step);
    }
    if (out.empty())
        throw std::invalid_argument("empty value list");
    return out;
}

// Expands one "{a..b}" group: "chain:{2..4}" -> chain:2, chain:3, chain:4.
inline std::vector<std::string> expand_spec(const std::string &s) {
    auto open = s.find('{');
    if (open == std::string::npos)
        return {s};
    auto close = s.find('}', open);
    if (close == std::string::npos)
        throw std::invalid_argument("unbalanced brace in '" + s + "'");
    std::vector<std::string> out;
    for (int v : parse_int_range(s.substr(open + 1, close - open - 1)))
        for (auto &rest : expand_spec(s.substr(close + 1)))
            out.push_back(s.substr(0, open) + std::to_string(v) + rest);
    return out;
}

// pure, werner:X, channel:Q, binary:F, file:PATH
inline LabelDistribution parse_state(const GraphPtr &g, const std::string &spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon), arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "pure" && arg.empty())
        return make_state(g, StateFamily::make_pure());
    if (kind == "file") {
        std::ifstream f(arg);
        if (!f)
            throw std::invalid_argument("cannot open state file '" + arg + "'");
        auto s = read_state_csv(f, g);
        renormalize(s);
        return s;
    }
    if (arg.empty())
        throw std::invalid_argument("bad state '" + spec + "' (pure, werner:X, channel:Q, binary:F, file:PATH)");
    double v = parse_double(arg, "state parameter");
    if (kind == "werner")
        return make_state(g, StateFamily::make_werner(v));
    if (kind == "channel")
        return make_state(g, StateFamily::make_channel_noise(v));
    if (kind == "binary")
        return make_state(g, StateFamily::make_binary(v));
    throw std::invalid_argument("unknown state family '" + kind + "' (pure, werner, channel, binary, file)");
}

inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

inline std::string num(double v) { return std::isnan(v) ? "" : format_double(v); }

// Output goes to --out, else $GPUR_OUT_DIR/<default_name>, else stdout.
class Sink {
  public:
    Sink(const std::string &out, const std::string &default_name) {
        std::string path = out;
        if (path.empty())
            if (const char *dir = std::getenv("GPUR_OUT_DIR"); dir && *dir)
                path = (std::filesystem::path(dir) / default_name).string();
        if (path.empty() || path == "-")
            return;
        auto parent = std::filesystem::path(path).parent_path();
        if (!parent.empty())
            std::filesystem::create_directories(parent);
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_)
            throw std::runtime_error("cannot write '" + path + "'");
        path_ = path;
    }
    std::ostream &os() { return file_ ? *file_ : std::cout; }
    const std::string &path() const { return path_; }

    void row(const std::vector<std::string> &fields) {
        for (std::size_t i = 0; i < fields.size(); i++)
            os() << (i ? "," : "") << csv_field(fields[i]);
        os() << "\n";
    }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::string path_;
};

}  // namespace gpur::cli
