#include "config.hpp"

#include "bitlet/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bitlet::cli {

using nlohmann::json;

// --- line locator --------------------------------------------------------------
//
// nlohmann::json keeps no source positions, so validation errors are
// anchored by re-scanning the (already well-formed) text along the pointer.

namespace {

std::size_t skip_ws(std::string_view t, std::size_t i)
{
    while (i < t.size() && (t[i] == ' ' || t[i] == '\t' || t[i] == '\n' || t[i] == '\r')) {
        ++i;
    }
    return i;
}

std::size_t skip_string(std::string_view t, std::size_t i)
{
    ++i;
    while (i < t.size() && t[i] != '"') {
        i += t[i] == '\\' ? 2 : 1;
    }
    return std::min(i + 1, t.size());
}

std::size_t skip_value(std::string_view t, std::size_t i);

std::size_t skip_container(std::string_view t, std::size_t i, char close)
{
    ++i;
    while (i < t.size()) {
        i = skip_ws(t, i);
        if (i >= t.size() || t[i] == close) {
            return std::min(i + 1, t.size());
        }
        if (t[i] == ',' || t[i] == ':') {
            ++i;
            continue;
        }
        i = skip_value(t, i);
    }
    return i;
}

std::size_t skip_value(std::string_view t, std::size_t i)
{
    i = skip_ws(t, i);
    if (i >= t.size()) {
        return i;
    }
    switch (t[i]) {
    case '"': return skip_string(t, i);
    case '{': return skip_container(t, i, '}');
    case '[': return skip_container(t, i, ']');
    default:
        while (i < t.size() && std::string_view(",}] \t\r\n").find(t[i]) == std::string_view::npos) {
            ++i;
        }
        return i;
    }
}

// Offset of the member value named `key` in the object starting at i, or npos.
std::size_t find_member(std::string_view t, std::size_t i, std::string_view key)
{
    ++i;
    while (true) {
        i = skip_ws(t, i);
        if (i >= t.size() || t[i] == '}') {
            return std::string_view::npos;
        }
        if (t[i] == ',') {
            ++i;
            continue;
        }
        const std::size_t key_end = skip_string(t, i);
        const std::string_view k = t.substr(i + 1, key_end - i - 2);
        i = skip_ws(t, key_end);
        if (i < t.size() && t[i] == ':') {
            ++i;
        }
        i = skip_ws(t, i);
        if (k == key) {
            return i;
        }
        i = skip_value(t, i);
    }
}

std::size_t find_element(std::string_view t, std::size_t i, std::size_t index)
{
    ++i;
    std::size_t at = 0;
    while (true) {
        i = skip_ws(t, i);
        if (i >= t.size() || t[i] == ']') {
            return std::string_view::npos;
        }
        if (t[i] == ',') {
            ++i;
            continue;
        }
        if (at == index) {
            return i;
        }
        i = skip_value(t, i);
        ++at;
    }
}

} // namespace

std::size_t line_of_pointer(std::string_view text, std::string_view pointer)
{
    std::size_t pos = skip_ws(text, 0);
    std::size_t start = 1;
    while (start <= pointer.size() && pos < text.size()) {
        const std::size_t slash = pointer.find('/', start);
        const std::string_view token =
            pointer.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
        std::size_t next = std::string_view::npos;
        if (text[pos] == '{') {
            next = find_member(text, pos, token);
        } else if (text[pos] == '[') {
            std::size_t index = 0;
            const bool numeric = !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
                return c >= '0' && c <= '9';
            });
            if (numeric) {
                index = std::stoul(std::string(token));
                next = find_element(text, pos, index);
            }
        }
        if (next == std::string_view::npos) {
            break;
        }
        pos = next;
        if (slash == std::string_view::npos) {
            break;
        }
        start = slash + 1;
    }
    return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(std::min(pos, text.size())), '\n')) + 1;
}

// --- parsing ------------------------------------------------------------------

namespace {

class Reader {
public:
    Reader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const
    {
        std::ostringstream os;
        os << source_ << ':' << line_of_pointer(text_, pointer) << ": " << (pointer.empty() ? "/" : pointer)
           << ": " << msg;
        throw Error(ErrorCode::ParseError, os.str());
    }

    void only_keys(const json& obj, const std::string& at, std::initializer_list<const char*> allowed) const
    {
        if (!obj.is_object()) {
            fail(at, "expected an object");
        }
        for (const auto& [key, _] : obj.items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
                fail(at + "/" + key, "unknown key '" + key + "'");
            }
        }
    }

    std::uint64_t count(const json& obj, const std::string& at, const char* key, std::uint64_t fallback,
                        std::uint64_t min) const
    {
        if (!obj.contains(key)) {
            return fallback;
        }
        const auto& v = obj.at(key);
        const std::string p = at + "/" + key;
        if (!v.is_number_integer()) {
            fail(p, "expected an integer");
        }
        if (v.is_number_unsigned()) {
            const auto u = v.get<std::uint64_t>();
            if (u < min) {
                fail(p, "must be >= " + std::to_string(min));
            }
            return u;
        }
        const auto s = v.get<std::int64_t>();
        if (s < 0 || static_cast<std::uint64_t>(s) < min) {
            fail(p, "must be >= " + std::to_string(min));
        }
        return static_cast<std::uint64_t>(s);
    }

    double positive(const json& obj, const std::string& at, const char* key, double fallback) const
    {
        if (!obj.contains(key)) {
            return fallback;
        }
        const auto& v = obj.at(key);
        const std::string p = at + "/" + key;
        if (!v.is_number()) {
            fail(p, "expected a number");
        }
        const double d = v.get<double>();
        if (!std::isfinite(d) || d <= 0) {
            fail(p, "must be a positive number");
        }
        return d;
    }

    bool boolean(const json& obj, const std::string& at, const char* key, bool fallback) const
    {
        if (!obj.contains(key)) {
            return fallback;
        }
        if (!obj.at(key).is_boolean()) {
            fail(at + "/" + key, "expected true or false");
        }
        return obj.at(key).get<bool>();
    }

private:
    std::string_view text_;
    std::string source_;
};

} // namespace

Config parse_config(std::string_view text, const std::string& source_name)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte is 1-based and points just past the offending character.
        const std::size_t byte = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        const auto line = std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n') + 1;
        throw Error(ErrorCode::ParseError, source_name + ":" + std::to_string(line) + ": " + e.what());
    }

    const Reader rd(text, source_name);
    rd.only_keys(root, "", {"pim", "cpu", "power", "workloads"});
    Config cfg;

    if (root.contains("pim")) {
        const auto& p = root.at("pim");
        rd.only_keys(p, "/pim", {"rows", "cols", "mats", "cycle_time_ns", "energy_per_cycle_pj"});
        const auto d = PimMachine::defaults();
        cfg.pim = PimMachine(rd.count(p, "/pim", "rows", d.rows(), 1), rd.count(p, "/pim", "cols", d.cols(), 1),
                             rd.count(p, "/pim", "mats", d.mats(), 1),
                             rd.positive(p, "/pim", "cycle_time_ns", d.cycle_time_ns()),
                             rd.positive(p, "/pim", "energy_per_cycle_pj", d.energy_per_cycle_pj()));
    }

    if (root.contains("cpu")) {
        const auto& c = root.at("cpu");
        rd.only_keys(c, "/cpu", {"bandwidth_gbps", "energy_per_bit_pj"});
        const auto d = CpuMachine::defaults();
        const auto gbps = rd.count(c, "/cpu", "bandwidth_gbps", static_cast<std::uint64_t>(d.bandwidth_gbps()), 1);
        cfg.cpu = CpuMachine::from_gbps(static_cast<double>(gbps),
                                        rd.positive(c, "/cpu", "energy_per_bit_pj", d.energy_per_bit_pj()));
    }

    if (root.contains("power") && !root.at("power").is_null()) {
        const auto& pw = root.at("power");
        rd.only_keys(pw, "/power", {"tdp_watts"});
        if (pw.contains("tdp_watts")) {
            cfg.power = PowerBudget(rd.positive(pw, "/power", "tdp_watts", 1.0));
        }
    }

    if (root.contains("workloads")) {
        const auto& list = root.at("workloads");
        if (!list.is_array()) {
            rd.fail("/workloads", "expected an array");
        }
        std::set<std::string> names;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& w = list[i];
            const std::string at = "/workloads/" + std::to_string(i);
            rd.only_keys(w, at, {"name", "op", "width_bits", "oc_override", "dio_bits", "layout", "weight"});

            std::string name = "workload" + std::to_string(i);
            if (w.contains("name")) {
                if (!w.at("name").is_string()) {
                    rd.fail(at + "/name", "expected a string");
                }
                name = w.at("name").get<std::string>();
            }
            if (!names.insert(name).second) {
                rd.fail(at + "/name", "duplicate workload name '" + name + "'");
            }
            if (!w.contains("op") || !w.at("op").is_string()) {
                rd.fail(w.contains("op") ? at + "/op" : at, "'op' must name an operation kind");
            }
            const auto kind = parse_op_kind(w.at("op").get<std::string>());
            if (!kind) {
                rd.fail(at + "/op", "unknown operation '" + w.at("op").get<std::string>() + "'");
            }
            const auto width = rd.count(w, at, "width_bits", 16, 1);
            if (width > kMaxWidthBits) {
                rd.fail(at + "/width_bits", "must be <= " + std::to_string(kMaxWidthBits));
            }
            std::optional<std::uint64_t> oc_override;
            if (w.contains("oc_override")) {
                oc_override = rd.count(w, at, "oc_override", 1, 1);
            }
            if (*kind == OpKind::Custom && !oc_override) {
                rd.fail(at, "CUSTOM operations need an oc_override");
            }
            const auto n = static_cast<unsigned>(width);
            const OpSpec op = *kind == OpKind::Custom ? OpSpec::custom(*oc_override, n) : OpSpec(*kind, n);
            const double dio = w.contains("dio_bits") ? rd.positive(w, at, "dio_bits", 1.0) : 3.0 * n;
            if (dio < 1.0) {
                rd.fail(at + "/dio_bits", "must be >= 1");
            }

            LayoutSpec layout = LayoutSpec::aligned(n);
            if (w.contains("layout")) {
                const auto& l = w.at("layout");
                const std::string lat = at + "/layout";
                rd.only_keys(l, lat,
                             {"element_width_bits", "misaligned_subsets", "needs_vertical_relocation",
                              "hmove_override", "vmove_override"});
                const auto ew = rd.count(l, lat, "element_width_bits", n, 1);
                const auto k = rd.count(l, lat, "misaligned_subsets", 0, 0);
                if (ew > std::numeric_limits<unsigned>::max() || k > std::numeric_limits<unsigned>::max()) {
                    rd.fail(lat, "value out of range");
                }
                std::optional<MoveOverrides> ov;
                if (l.contains("hmove_override") || l.contains("vmove_override")) {
                    ov = MoveOverrides{rd.count(l, lat, "hmove_override", 0, 0),
                                       rd.count(l, lat, "vmove_override", 0, 0)};
                }
                layout = LayoutSpec(static_cast<unsigned>(ew), static_cast<unsigned>(k),
                                    rd.boolean(l, lat, "needs_vertical_relocation", false), ov);
            }
            const double weight = rd.positive(w, at, "weight", 1.0);

            Workload wl{name, op, oc_override, layout, dio, weight};
            try {
                (void)resolve(wl, cfg.pim);
            } catch (const Error& e) {
                rd.fail(at, e.what());
            }
            cfg.workloads.push_back(std::move(wl));
        }
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, path.string() + ": cannot read config file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

} // namespace bitlet::cli
