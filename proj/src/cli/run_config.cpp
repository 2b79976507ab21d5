#include "grs/cli/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace grs::cli {

namespace {

double parse_real(std::string_view text) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    while (used < s.size() && s[used] == ' ') {
        ++used;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
        throw std::invalid_argument("not a finite number: '" + s + "'");
    }
    return v;
}

}  // namespace

std::vector<double> RunConfig::sample_times() const {
    return grid.times(params.eps_handoff, params.t_max);
}

std::vector<double> parse_ell_list(std::string_view text) {
    std::vector<double> out;
    if (text.find_first_not_of(' ') == std::string_view::npos) {
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : comma - start);
        while (!item.empty() && item.front() == ' ') {
            item.remove_prefix(1);
        }
        out.push_back(parse_real(item));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

std::vector<double> parse_ell_range(std::string_view text) {
    const std::size_t a = text.find(':');
    const std::size_t b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (b == std::string_view::npos) {
        throw std::invalid_argument("ell range must look like START:STOP:COUNT");
    }
    const double lo = parse_real(text.substr(0, a));
    const double hi = parse_real(text.substr(a + 1, b - a - 1));
    const double count = parse_real(text.substr(b + 1));
    if (count < 1.0 || count != std::floor(count)) {
        throw std::invalid_argument("ell range count must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(count);
    if (n == 1) {
        return {lo};
    }
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
}

std::size_t worker_count() {
    if (const char* env = std::getenv("GRS_SOLITON_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

double parse_torsion(std::string_view text) {
    if (text == "sqrt2") {
        return kTorsionSqrt2;
    }
    const double v = parse_real(text);
    if (v == 0.0) {
        return 0.0;
    }
    if (std::abs(v - kTorsionSqrt2) < 1e-12) {
        return kTorsionSqrt2;
    }
    throw std::invalid_argument("k must be 0 or sqrt2");
}

}  // namespace grs::cli
