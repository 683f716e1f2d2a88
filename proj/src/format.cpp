#include "votexfer/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace votexfer {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view text) {
    text = trim(text);
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("cannot format double");
    return std::string(buf, ptr);
}

std::vector<double> parse_real_grid(std::string_view text) {
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw std::invalid_argument("range grid must be start:stop:step");
        const double start = parse_number<double>(parts[0]);
        const double stop = parse_number<double>(parts[1]);
        const double step = parse_number<double>(parts[2]);
        if (!(step > 0.0) || !(stop >= start)) throw std::invalid_argument("range grid needs step > 0 and stop >= start");
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 0.5)) + 1;
        if (count > 10'000'000) throw std::invalid_argument("range grid is too large");
        std::vector<double> grid;
        grid.reserve(static_cast<std::size_t>(count));
        // Snap to 1e-12 so that 0.5025 + 3 * 0.0025 prints as 0.51.
        for (long long i = 0; i < count; ++i) {
            grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
        return grid;
    }
    std::vector<double> grid;
    for (auto part : split(text, ',')) grid.push_back(parse_number<double>(part));
    return grid;
}

std::vector<long long> parse_int_grid(std::string_view text) {
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw std::invalid_argument("range grid must be start:stop:step");
        const auto start = parse_number<long long>(parts[0]);
        const auto stop = parse_number<long long>(parts[1]);
        const auto step = parse_number<long long>(parts[2]);
        if (step <= 0 || stop < start) throw std::invalid_argument("range grid needs step > 0 and stop >= start");
        std::vector<long long> grid;
        for (auto v = start; v <= stop; v += step) grid.push_back(v);
        return grid;
    }
    std::vector<long long> grid;
    for (auto part : split(text, ',')) grid.push_back(parse_number<long long>(part));
    return grid;
}

}  // namespace votexfer
