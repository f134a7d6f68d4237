#include "bitlet/error.hpp"
#include "bitlet/magic_sim.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace bitlet {

std::string to_text(const NorProgram& program)
{
    std::ostringstream os;
    for (const auto& ins : program.instructions()) {
        if (const auto* g = std::get_if<NorGate>(&ins)) {
            os << "NOR " << g->dest;
            for (auto s : g->sources()) {
                os << ' ' << s;
            }
        } else if (const auto* h = std::get_if<HMove>(&ins)) {
            os << "HMOVE " << h->dest << ' ' << h->src;
        } else {
            const auto& v = std::get<VMove>(ins);
            os << "VMOVE " << v.row_offset << ' ' << v.col_lo << ' ' << v.col_hi << ' ' << v.row;
            if (v.crosses_array) {
                os << " cross";
            }
        }
        os << '\n';
    }
    return os.str();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why)
{
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line_no)
{
    T v{};
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        parse_fail(line_no, "bad number '" + std::string(tok) + "'");
    }
    return v;
}

} // namespace

NorProgram parse_program(std::string_view text)
{
    NorProgram prog;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto toks = split_ws(line);
        if (toks.empty() || toks.front().front() == '#') {
            continue;
        }
        const auto op = toks.front();
        if (op == "NOR") {
            if (toks.size() < 3 || toks.size() > 2 + kMaxNorFanin) {
                parse_fail(line_no, "NOR takes a destination and 1 to 4 sources");
            }
            std::vector<std::uint32_t> srcs;
            for (std::size_t k = 2; k < toks.size(); ++k) {
                srcs.push_back(parse_number<std::uint32_t>(toks[k], line_no));
            }
            prog.nor(parse_number<std::uint32_t>(toks[1], line_no), srcs);
        } else if (op == "HMOVE") {
            if (toks.size() != 3) {
                parse_fail(line_no, "HMOVE takes exactly 2 operands");
            }
            prog.hmove(parse_number<std::uint32_t>(toks[1], line_no),
                       parse_number<std::uint32_t>(toks[2], line_no));
        } else if (op == "VMOVE") {
            if (toks.size() != 5 && toks.size() != 6) {
                parse_fail(line_no, "VMOVE takes off col_lo col_hi row [cross]");
            }
            bool cross = false;
            if (toks.size() == 6) {
                if (toks[5] != "cross") {
                    parse_fail(line_no, "unexpected token '" + std::string(toks[5]) + "'");
                }
                cross = true;
            }
            prog.vmove(parse_number<std::int64_t>(toks[1], line_no),
                       parse_number<std::uint32_t>(toks[2], line_no),
                       parse_number<std::uint32_t>(toks[3], line_no),
                       parse_number<std::uint64_t>(toks[4], line_no), cross);
        } else {
            parse_fail(line_no, "unknown instruction '" + std::string(op) + "'");
        }
    }
    return prog;
}

} // namespace bitlet
