#include "folia/parse.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "folia/errors.hpp"

namespace folia {

namespace {

enum class Tok { Num, Ident, Op, Newline, End };

struct Token {
    Tok kind;
    std::string text;
    GaussianRational value;  // for Num
    int line, col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text, int first_line) {
    std::vector<Token> out;
    int line = first_line, col = 1;
    size_t i = 0;
    auto err = [&](const std::string& msg) { throw ParseError(msg, line, col); };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (c == '\n') {
            out.push_back({Tok::Newline, "\\n", {}, line, col});
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        int start_col = col;
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < text.size() &&
                                                          std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            std::string digits(text.substr(i, j - i));
            std::string frac;
            if (j < text.size() && text[j] == '.') {
                size_t k = j + 1;
                while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                frac = std::string(text.substr(j + 1, k - j - 1));
                j = k;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E') && j + 1 < text.size() &&
                (std::isdigit(static_cast<unsigned char>(text[j + 1])) || text[j + 1] == '-' || text[j + 1] == '+'))
                err("exponent notation is not an exact literal");
            std::string all = digits + frac;
            mpz_class num(all.empty() ? "0" : all);
            mpz_class den = 1;
            for (size_t k = 0; k < frac.size(); ++k) den *= 10;
            mpq_class q(num, den);
            q.canonicalize();
            GaussianRational v(q);
            if (j < text.size() && text[j] == 'i' && !(j + 1 < text.size() && ident_char(text[j + 1]))) {
                v = GaussianRational(0, q);
                ++j;
            } else if (j < text.size() && ident_char(text[j])) {
                col += static_cast<int>(j - i);
                err("malformed numeric literal");
            }
            out.push_back({Tok::Num, std::string(text.substr(i, j - i)), v, line, start_col});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (ident_start(c)) {
            size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), {}, line, start_col});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::string_view("+-*/^(),").find(c) != std::string_view::npos) {
            out.push_back({Tok::Op, std::string(1, c), {}, line, start_col});
            ++i;
            ++col;
            continue;
        }
        err(std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::End, "end of input", {}, line, col});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, const VarList& vars) : t_(std::move(toks)), vars_(vars) {}

    std::vector<Poly> components() {
        std::vector<Poly> out;
        skip_newlines();
        while (peek().kind != Tok::End) {
            out.push_back(expr());
            const Token& s = peek();
            if (s.kind == Tok::Op && s.text == ",") {
                ++pos_;
                skip_newlines();
                if (peek().kind == Tok::End) fail(peek(), "expected a component after ','");
                continue;
            }
            if (s.kind == Tok::Newline) {
                skip_newlines();
                continue;
            }
            if (s.kind != Tok::End) fail(s, "unexpected '" + s.text + "'");
        }
        return out;
    }

    Poly single() {
        skip_newlines();
        Poly p = expr();
        skip_newlines();
        if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
        return p;
    }

private:
    const Token& peek() const { return t_[pos_]; }
    bool is_op(const char* s) const { return peek().kind == Tok::Op && peek().text == s; }
    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.col); }
    void skip_newlines() {
        while (peek().kind == Tok::Newline) ++pos_;
    }

    Poly expr() {
        Poly acc = term();
        while (is_op("+") || is_op("-")) {
            bool minus = peek().text == "-";
            ++pos_;
            skip_newlines();
            Poly rhs = term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    Poly term() {
        Poly acc = unary();
        while (is_op("*") || is_op("/")) {
            bool divide = peek().text == "/";
            ++pos_;
            skip_newlines();
            const Token& at = peek();
            Poly rhs = unary();
            if (divide) {
                if (!rhs.is_constant()) fail(at, "division by a non-constant expression");
                if (rhs.is_zero()) fail(at, "division by zero");
                acc *= rhs.constant_term().inverse();
            } else {
                acc *= rhs;
            }
        }
        return acc;
    }

    Poly unary() {
        if (is_op("-")) {
            ++pos_;
            skip_newlines();
            return -unary();
        }
        if (is_op("+")) {
            ++pos_;
            skip_newlines();
            return unary();
        }
        return power();
    }

    Poly power() {
        Poly base = primary();
        if (is_op("^")) {
            ++pos_;
            const Token& e = peek();
            if (e.kind != Tok::Num || !e.value.is_real() || e.value.re().get_den() != 1 || sgn(e.value.re()) < 0 ||
                e.text.find('.') != std::string::npos)
                fail(e, "exponent must be a non-negative integer");
            if (e.value.re() > 1000) fail(e, "exponent too large");
            ++pos_;
            if (is_op("^")) fail(peek(), "chained exponents need parentheses");
            return base.pow(static_cast<int>(e.value.re().get_num().get_si()));
        }
        return base;
    }

    Poly primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Num:
            ++pos_;
            return Poly::constant(vars_, t.value);
        case Tok::Ident: {
            ++pos_;
            if (t.text == "i") return Poly::constant(vars_, GaussianRational::i());
            auto it = std::find(vars_.begin(), vars_.end(), t.text);
            if (it == vars_.end()) fail(t, "undeclared variable '" + t.text + "'");
            return Poly::variable(vars_, static_cast<int>(it - vars_.begin()));
        }
        case Tok::Op:
            if (t.text == "(") {
                ++pos_;
                skip_newlines();
                Poly inner = expr();
                skip_newlines();
                if (!is_op(")")) fail(peek(), "expected ')'");
                ++pos_;
                return inner;
            }
            fail(t, "expected an operand before '" + t.text + "'");
        case Tok::Newline:
        case Tok::End:
            fail(t, "expected an operand");
        }
        fail(t, "expected an operand");
    }

    std::vector<Token> t_;
    const VarList& vars_;
    size_t pos_ = 0;
};

std::string trim(std::string s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

} // namespace

ParsedSystem parse_system(std::string_view text) {
    ParsedSystem sys;
    bool have_vars = false, have_kind = false;
    std::string body;
    int line_no = 0;
    size_t start = 0;
    static const std::regex header(R"(^\s*(vars|kind)\s*:(.*)$)");
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        std::string line(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
        ++line_no;
        std::string code = line.substr(0, line.find('#'));
        std::smatch m;
        if (std::regex_match(code, m, header)) {
            std::string key = m[1], value = trim(m[2]);
            int col = static_cast<int>(m.position(2)) + 1;
            if (key == "vars") {
                if (have_vars) throw ParseError("duplicate 'vars' header", line_no, 1);
                have_vars = true;
                std::stringstream ss(value);
                std::string name;
                while (std::getline(ss, name, ',')) {
                    name = trim(name);
                    if (name.empty() || !ident_start(name[0]) ||
                        !std::all_of(name.begin(), name.end(), ident_char))
                        throw ParseError("invalid variable name '" + name + "'", line_no, col);
                    if (name == "i") throw ParseError("'i' is reserved for the imaginary unit", line_no, col);
                    if (std::find(sys.vars.begin(), sys.vars.end(), name) != sys.vars.end())
                        throw ParseError("duplicate variable '" + name + "'", line_no, col);
                    sys.vars.push_back(name);
                }
                if (sys.vars.empty() || sys.vars.size() > kMaxVars)
                    throw ParseError("between one and three variables must be declared", line_no, col);
            } else {
                if (have_kind) throw ParseError("duplicate 'kind' header", line_no, 1);
                have_kind = true;
                if (value == "field")
                    sys.kind = SystemKind::Field;
                else if (value == "form")
                    sys.kind = SystemKind::Form;
                else
                    throw ParseError("kind must be 'field' or 'form'", line_no, col);
            }
            body += "\n";
        } else {
            body += line + "\n";
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    if (!have_vars) throw ParseError("missing 'vars:' header", 1, 1);
    Parser p(tokenize(body, 1), sys.vars);
    sys.components = p.components();
    if (sys.components.size() != sys.vars.size())
        throw ParseError("expected " + std::to_string(sys.vars.size()) + " components, found " +
                             std::to_string(sys.components.size()),
                         line_no, 1);
    return sys;
}

Poly parse_poly(std::string_view expr, const VarList& vars) {
    Parser p(tokenize(expr, 1), vars);
    return p.single();
}

std::string render_system(const ParsedSystem& s) {
    std::string out = "vars: ";
    for (size_t i = 0; i < s.vars.size(); ++i) out += (i ? ", " : "") + s.vars[i];
    out += "\nkind: ";
    out += s.kind == SystemKind::Field ? "field" : "form";
    out += "\n";
    for (auto& c : s.components) out += c.str() + "\n";
    return out;
}

} // namespace folia
