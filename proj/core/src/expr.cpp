#include "residua/expr.hpp"

#include <algorithm>
#include <cctype>

namespace residua {

std::string ParseDiagnostic::to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " +
           (severity == Severity::Error ? "error: " : "warning: ") + message;
}

namespace {

struct Token {
    enum class Kind { Number, Ident, Op, LParen, RParen, End } kind;
    std::string text;       // ident name or op char
    GaussianRational value; // for numbers
    int line, column;
};

class Lexer {
public:
    Lexer(const std::string& src, int line0, int col0)
        : src_(src), line_(line0), col_(col0) {}

    Token next() {
        skip_ws();
        int l = line_, c = col_;
        if (pos_ >= src_.size()) return {Token::Kind::End, "", {}, l, c};
        char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) return number(l, c);
        if (std::isalpha(static_cast<unsigned char>(ch))) return ident(l, c);
        if (ch == '(') { advance(); return {Token::Kind::LParen, "(", {}, l, c}; }
        if (ch == ')') { advance(); return {Token::Kind::RParen, ")", {}, l, c}; }
        if (std::string("+-*/^").find(ch) != std::string::npos) {
            advance();
            return {Token::Kind::Op, std::string(1, ch), {}, l, c};
        }
        throw ParseError({l, c, std::string("unexpected character '") + ch + "'"});
    }

private:
    void advance() {
        if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    std::string digits() {
        std::string out;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            out += src_[pos_];
            advance();
        }
        return out;
    }
    Token number(int l, int c) {
        std::string numer = digits();
        std::string denom;
        // consume "/ddd" as part of the literal only when digits follow
        if (pos_ < src_.size() && src_[pos_] == '/' && pos_ + 1 < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
            advance();
            denom = digits();
        }
        bool imag = false;
        if (pos_ < src_.size() && src_[pos_] == 'i' &&
            (pos_ + 1 >= src_.size() ||
             !(std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '_'))) {
            imag = true;
            advance();
        }
        mpq_class q = parse_rational(denom.empty() ? numer : numer + "/" + denom);
        GaussianRational v = imag ? GaussianRational(mpq_class(0), q) : GaussianRational(q);
        return {Token::Kind::Number, "", v, l, c};
    }
    Token ident(int l, int c) {
        std::string name;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            name += src_[pos_];
            advance();
        }
        if (name == "i") return {Token::Kind::Number, "", GaussianRational::i(), l, c};
        return {Token::Kind::Ident, name, {}, l, c};
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_, col_;
};

class Parser {
public:
    Parser(const std::string& src, const std::vector<std::string>& vars, int line0, int col0)
        : lex_(src, line0, col0), vars_(vars) {
        cur_ = lex_.next();
    }

    RationalFunction parse() {
        RationalFunction r = expression(0);
        if (cur_.kind != Token::Kind::End)
            throw ParseError({cur_.line, cur_.column, "trailing input after expression"});
        return r;
    }

private:
    static int precedence(const std::string& op) {
        if (op == "+" || op == "-") return 1;
        if (op == "*" || op == "/") return 2;
        if (op == "^") return 3;
        return -1;
    }

    RationalFunction expression(int min_prec) {
        RationalFunction lhs = unary();
        while (cur_.kind == Token::Kind::Op) {
            std::string op = cur_.text;
            int prec = precedence(op);
            if (prec < min_prec) break;
            Token tok = cur_;
            cur_ = lex_.next();
            if (op == "^") {
                // right-associative, exponent must be a nonnegative integer literal
                if (cur_.kind != Token::Kind::Number || !cur_.value.is_real() ||
                    cur_.value.re().get_den() != 1 || sgn(cur_.value.re()) < 0)
                    throw ParseError({cur_.line, cur_.column,
                                      "exponent must be a nonnegative integer"});
                unsigned long e = cur_.value.re().get_num().get_ui();
                cur_ = lex_.next();
                lhs = lhs.pow(int(e));
                continue;
            }
            RationalFunction rhs = expression(prec + 1);
            if (op == "+") lhs += rhs;
            else if (op == "-") lhs -= rhs;
            else if (op == "*") lhs *= rhs;
            else if (op == "/") {
                if (rhs.is_zero())
                    throw ParseError({tok.line, tok.column, "division by zero"});
                lhs /= rhs;
            }
        }
        return lhs;
    }

    RationalFunction unary() {
        if (cur_.kind == Token::Kind::Op && (cur_.text == "-" || cur_.text == "+")) {
            bool neg = cur_.text == "-";
            cur_ = lex_.next();
            RationalFunction v = unary();
            return neg ? -v : v;
        }
        return atom();
    }

    RationalFunction atom() {
        switch (cur_.kind) {
        case Token::Kind::Number: {
            RationalFunction v{cur_.value};
            cur_ = lex_.next();
            return power_suffix(v);
        }
        case Token::Kind::Ident: {
            if (std::find(vars_.begin(), vars_.end(), cur_.text) == vars_.end())
                throw ParseError({cur_.line, cur_.column, "unknown variable '" + cur_.text + "'"});
            RationalFunction v = RationalFunction::variable(cur_.text);
            cur_ = lex_.next();
            return power_suffix(v);
        }
        case Token::Kind::LParen: {
            cur_ = lex_.next();
            RationalFunction v = expression(0);
            if (cur_.kind != Token::Kind::RParen)
                throw ParseError({cur_.line, cur_.column, "expected ')'"});
            cur_ = lex_.next();
            return power_suffix(v);
        }
        default:
            throw ParseError({cur_.line, cur_.column, "expected a value"});
        }
    }

    RationalFunction power_suffix(RationalFunction base) {
        if (cur_.kind == Token::Kind::Op && cur_.text == "^") {
            cur_ = lex_.next();
            if (cur_.kind != Token::Kind::Number || !cur_.value.is_real() ||
                cur_.value.re().get_den() != 1 || sgn(cur_.value.re()) < 0)
                throw ParseError({cur_.line, cur_.column, "exponent must be a nonnegative integer"});
            unsigned long e = cur_.value.re().get_num().get_ui();
            cur_ = lex_.next();
            return base.pow(int(e));
        }
        return base;
    }

    Lexer lex_;
    Token cur_;
    const std::vector<std::string>& vars_;
};

} // namespace

RationalFunction parse_expression(const std::string& text, const std::vector<std::string>& vars) {
    Parser p(text, vars, 1, 1);
    return p.parse();
}

RationalFunction parse_expression_at(const std::string& text, const std::vector<std::string>& vars,
                                     int line0, int col0) {
    Parser p(text, vars, line0, col0);
    return p.parse();
}

std::string serialize_expression(const RationalFunction& r) { return r.to_string(); }

} // namespace residua
