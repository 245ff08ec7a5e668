#include "qtails/dsl.hpp"

#include "qtails/builders.hpp"
#include "qtails/catalog.hpp"
#include "qtails/tails.hpp"

#include <fstream>
#include <sstream>

namespace qtails {
namespace {

// ---- lexer ----

struct Token {
    enum Type { Ident, Number, Sym, End };
    Type type = End;
    std::string text;
    int line = 1;
    int col = 1;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (text[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += k;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        // U+2212 minus sign is a synonym for the ASCII hyphen
        if (i + 2 < text.size() && static_cast<unsigned char>(c) == 0xe2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back({Token::Sym, "-", line, col});
            advance(3);
            continue;
        }
        if (ident_start(c)) {
            int l = line, co = col;
            size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            out.push_back({Token::Ident, text.substr(i, j - i), l, co});
            advance(j - i);
            continue;
        }
        if (c >= '0' && c <= '9') {
            int l = line, co = col;
            size_t j = i;
            while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
            out.push_back({Token::Number, text.substr(i, j - i), l, co});
            advance(j - i);
            continue;
        }
        if (std::string("+-*/^(),=").find(c) != std::string::npos) {
            out.push_back({Token::Sym, std::string(1, c), line, col});
            advance(1);
            continue;
        }
        throw dsl_parse_error("unexpected character '" + std::string(1, c) + "'", line, col);
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

// ---- parser ----

struct BuiltinInfo {
    const char* name;
    int arity;
};
constexpr BuiltinInfo kBuiltins[] = {{"poch", 3},    {"pochinf", 2}, {"qbinom", 2},
                                     {"sum", 4},     {"lambert", 4}, {"catalog", 1},
                                     {"eps", 1}};

const BuiltinInfo* builtin_info(const std::string& name) {
    for (const auto& b : kBuiltins)
        if (name == b.name) return &b;
    return nullptr;
}

bool reserved_name(const std::string& name) {
    return name == "q" || name == "t" || name == "inf" || name == "let" ||
           name == "assert_eq" || name == "dump" || builtin_info(name) != nullptr;
}

ExprPtr make_number(Rational r) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Number;
    e->number = std::move(r);
    return e;
}

ExprPtr make_binary(char op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = op;
    e->args = {std::move(a), std::move(b)};
    return e;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    Script script() {
        Script s;
        while (peek().type != Token::End) s.statements.push_back(statement());
        if (s.statements.empty())
            throw dsl_parse_error("empty script: expected let, assert_eq, or dump", 1, 1);
        return s;
    }

    ExprPtr whole_expression() {
        ExprPtr e = expr();
        if (peek().type != Token::End) fail("expected end of expression");
        return e;
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek(size_t ahead = 0) const {
        size_t k = pos_ + ahead;
        return k < toks_.size() ? toks_[k] : toks_.back();
    }
    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    [[noreturn]] void fail(const std::string& what) const {
        throw dsl_parse_error(what, peek().line, peek().col);
    }
    bool is_sym(const char* s) const { return peek().type == Token::Sym && peek().text == s; }
    void expect_sym(const char* s) {
        if (!is_sym(s)) fail(std::string("expected '") + s + "'");
        take();
    }

    Statement statement() {
        const Token& t = peek();
        if (t.type != Token::Ident) fail("expected let, assert_eq, or dump");
        Statement st;
        st.line = t.line;
        if (t.text == "let") {
            take();
            if (peek().type != Token::Ident) fail("expected a name after let");
            if (reserved_name(peek().text)) fail("'" + peek().text + "' is a reserved name");
            st.kind = Statement::Kind::Let;
            st.name = take().text;
            expect_sym("=");
            st.exprs.push_back(expr());
            return st;
        }
        if (t.text == "assert_eq") {
            take();
            st.kind = Statement::Kind::AssertEq;
            expect_sym("(");
            st.exprs.push_back(expr());
            expect_sym(",");
            st.exprs.push_back(expr());
            expect_sym(")");
            return st;
        }
        if (t.text == "dump") {
            take();
            st.kind = Statement::Kind::Dump;
            expect_sym("(");
            st.exprs.push_back(expr());
            expect_sym(")");
            return st;
        }
        fail("expected let, assert_eq, or dump");
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (is_sym("+") || is_sym("-")) {
            char op = take().text[0];
            e = make_binary(op, e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (is_sym("*") || is_sym("/")) {
            char op = take().text[0];
            e = make_binary(op, e, factor());
        }
        return e;
    }

    // unary minus desugars to (-1) * x so the printer can round-trip it
    ExprPtr factor() {
        if (is_sym("-")) {
            take();
            return make_binary('*', make_number(Rational(-1)), factor());
        }
        ExprPtr base = atom();
        if (is_sym("^")) {
            take();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Power;
            e->args = {std::move(base), factor()};
            return e;
        }
        return base;
    }

    ExprPtr atom() {
        const Token& t = peek();
        if (t.type == Token::Number) {
            return make_number(Rational(take().text));
        }
        if (is_sym("(")) {
            take();
            ExprPtr e = expr();
            expect_sym(")");
            return e;
        }
        if (t.type == Token::Ident) {
            if (peek(1).type == Token::Sym && peek(1).text == "(") return call();
            std::string name = take().text;
            auto e = std::make_shared<Expr>();
            if (name == "q") {
                e->kind = Expr::Kind::VarQ;
            } else if (name == "t") {
                e->kind = Expr::Kind::VarT;
            } else {
                e->kind = Expr::Kind::Name;
                e->name = name;
            }
            return e;
        }
        fail("expected an expression");
    }

    ExprPtr call() {
        Token name = take();
        const BuiltinInfo* info = builtin_info(name.text);
        if (!info)
            throw dsl_parse_error("unknown builtin '" + name.text + "'", name.line, name.col);
        expect_sym("(");
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Call;
        e->name = name.text;
        if (!is_sym(")")) {
            e->args.push_back(expr());
            while (is_sym(",")) {
                take();
                e->args.push_back(expr());
            }
        }
        expect_sym(")");
        if (static_cast<int>(e->args.size()) != info->arity)
            throw dsl_parse_error("'" + name.text + "' expects " + std::to_string(info->arity) +
                                      " arguments, got " + std::to_string(e->args.size()),
                                  name.line, name.col);
        if (e->name == "sum" && e->args[0]->kind != Expr::Kind::Name)
            throw dsl_parse_error("sum index must be a name", name.line, name.col);
        if (e->name == "catalog" && e->args[0]->kind != Expr::Kind::Name)
            throw dsl_parse_error("catalog takes a series name", name.line, name.col);
        return e;
    }
};

// ---- printer ----

bool is_neg_one(const ExprPtr& e) {
    return e->kind == Expr::Kind::Number && e->number == -1;
}

void print_rec(std::ostream& os, const ExprPtr& e);

// contexts that need an atom: parenthesize anything that is not one
void print_atomish(std::ostream& os, const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Number:
        case Expr::Kind::VarQ:
        case Expr::Kind::VarT:
        case Expr::Kind::Name:
        case Expr::Kind::Call:
            print_rec(os, e);
            return;
        default:
            os << "(";
            print_rec(os, e);
            os << ")";
    }
}

// contexts that need a factor: powers and unary minus may stay bare
void print_factor(std::ostream& os, const ExprPtr& e) {
    if (e->kind == Expr::Kind::Power ||
        (e->kind == Expr::Kind::Binary && e->op == '*' && is_neg_one(e->args[0]))) {
        print_rec(os, e);
        return;
    }
    print_atomish(os, e);
}

void print_rec(std::ostream& os, const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Number:
            os << e->number.str();
            return;
        case Expr::Kind::VarQ:
            os << "q";
            return;
        case Expr::Kind::VarT:
            os << "t";
            return;
        case Expr::Kind::Name:
            os << e->name;
            return;
        case Expr::Kind::Power:
            print_atomish(os, e->args[0]);
            os << "^";
            print_factor(os, e->args[1]);
            return;
        case Expr::Kind::Binary:
            if (e->op == '*' && is_neg_one(e->args[0])) {
                os << "-";
                print_factor(os, e->args[1]);
                return;
            }
            os << "(";
            print_rec(os, e->args[0]);
            os << " " << e->op << " ";
            print_rec(os, e->args[1]);
            os << ")";
            return;
        case Expr::Kind::Call:
            os << e->name << "(";
            for (size_t i = 0; i < e->args.size(); ++i) {
                if (i) os << ", ";
                print_rec(os, e->args[i]);
            }
            os << ")";
            return;
    }
}

// ---- evaluator ----

struct EvalCtx {
    int qorder;
    int torder;
    const std::map<std::string, Value>* lets;
    std::map<std::string, long long> bound;
};

int rank(const Value& v) { return static_cast<int>(v.index()); }

QSeries as_q(const Value& v, const EvalCtx& ctx) {
    if (std::holds_alternative<Rational>(v))
        return QSeries::constant(std::get<Rational>(v), ctx.qorder);
    return std::get<QSeries>(v);
}

TSeries as_t(const Value& v, const EvalCtx& ctx) {
    if (std::holds_alternative<TSeries>(v)) return std::get<TSeries>(v);
    TSeries out(ctx.torder, ctx.qorder);
    out.rows[0] = as_q(v, ctx);
    return out;
}

Value value_add(const Value& a, const Value& b, const EvalCtx& ctx, int sign) {
    int r = std::max(rank(a), rank(b));
    if (r == 0) {
        const auto& x = std::get<Rational>(a);
        const auto& y = std::get<Rational>(b);
        return sign > 0 ? Rational(x + y) : Rational(x - y);
    }
    if (r == 1)
        return sign > 0 ? qs_add(as_q(a, ctx), as_q(b, ctx)) : qs_sub(as_q(a, ctx), as_q(b, ctx));
    return sign > 0 ? ts_add(as_t(a, ctx), as_t(b, ctx)) : ts_sub(as_t(a, ctx), as_t(b, ctx));
}

Value value_mul(const Value& a, const Value& b, const EvalCtx& ctx) {
    int r = std::max(rank(a), rank(b));
    if (r == 0) return Rational(std::get<Rational>(a) * std::get<Rational>(b));
    if (rank(a) == 0) {
        const auto& c = std::get<Rational>(a);
        return r == 1 ? Value(qs_scale(c, std::get<QSeries>(b)))
                      : Value(ts_scale(c, std::get<TSeries>(b)));
    }
    if (rank(b) == 0) return value_mul(b, a, ctx);
    if (r == 1) return qs_mul(std::get<QSeries>(a), std::get<QSeries>(b));
    // row-wise shortcut when one side has no t
    if (rank(a) == 1 || rank(b) == 1) {
        const QSeries& s = rank(a) == 1 ? std::get<QSeries>(a) : std::get<QSeries>(b);
        TSeries out = rank(a) == 1 ? std::get<TSeries>(b) : std::get<TSeries>(a);
        for (auto& row : out.rows) row = qs_mul(row, s);
        return out;
    }
    return ts_mul(std::get<TSeries>(a), std::get<TSeries>(b));
}

TSeries ts_div(const TSeries& A, const TSeries& B) {
    QSeries inv0 = qs_inv(B.rows[0]);
    TSeries R(A.torder(), A.qorder());
    for (int j = 0; j < A.torder(); ++j) {
        QSeries acc = A.rows[static_cast<size_t>(j)];
        for (int i = 1; i <= j && i < B.torder(); ++i)
            acc = qs_linear(1, acc, -1,
                            qs_mul(B.rows[static_cast<size_t>(i)],
                                   R.rows[static_cast<size_t>(j - i)]));
        R.rows[static_cast<size_t>(j)] = qs_mul(acc, inv0);
    }
    return R;
}

Value value_div(const Value& a, const Value& b, const EvalCtx& ctx) {
    if (rank(b) == 0) {
        const auto& d = std::get<Rational>(b);
        if (d == 0) throw series_error("division by zero");
        return value_mul(Rational(1 / d), a, ctx);
    }
    if (rank(b) == 1 && rank(a) <= 1) return qs_mul(as_q(a, ctx), qs_inv(std::get<QSeries>(b)));
    if (rank(b) == 1) {
        QSeries inv = qs_inv(std::get<QSeries>(b));
        TSeries out = std::get<TSeries>(a);
        for (auto& row : out.rows) row = qs_mul(row, inv);
        return out;
    }
    return ts_div(as_t(a, ctx), std::get<TSeries>(b));
}

Value value_pow(Value base, long long e, const EvalCtx& ctx) {
    if (e == 0) return Rational(1);
    if (e < 0) {
        base = value_div(Rational(1), base, ctx);
        e = -e;
    }
    Value result = Rational(1);
    unsigned long long k = static_cast<unsigned long long>(e);
    while (true) {
        if (k & 1) result = value_mul(result, base, ctx);
        k >>= 1;
        if (!k) break;
        base = value_mul(base, base, ctx);
    }
    return result;
}

long long to_int(const Value& v, const char* what) {
    if (!std::holds_alternative<Rational>(v)) throw series_error(std::string("non-integer ") + what);
    const Rational& r = std::get<Rational>(v);
    if (denominator(r) != 1) throw series_error(std::string("non-integer ") + what);
    return numerator(r).convert_to<long long>();
}

SignedMonomial value_to_monomial(const Value& v) {
    auto bad = []() -> SignedMonomial {
        throw series_error("pochhammer argument must be a signed monomial");
    };
    if (std::holds_alternative<Rational>(v)) {
        const Rational& r = std::get<Rational>(v);
        if (r == 0) return SignedMonomial{0, 0, 0};
        if (r == 1) return SignedMonomial{1, 0, 0};
        if (r == -1) return SignedMonomial{-1, 0, 0};
        return bad();
    }
    auto from_row = [&bad](const QSeries& s, int tpow) -> SignedMonomial {
        int pos = -1;
        for (int m = 0; m < s.order(); ++m) {
            if (s.c[static_cast<size_t>(m)] == 0) continue;
            if (pos >= 0) return bad();
            pos = m;
        }
        if (pos < 0) return SignedMonomial{0, 0, 0};
        const Rational& c = s.c[static_cast<size_t>(pos)];
        if (c == 1) return SignedMonomial{1, tpow, pos};
        if (c == -1) return SignedMonomial{-1, tpow, pos};
        return bad();
    };
    if (std::holds_alternative<QSeries>(v)) return from_row(std::get<QSeries>(v), 0);
    const TSeries& ts = std::get<TSeries>(v);
    int row = -1;
    for (int j = 0; j < ts.torder(); ++j) {
        if (!qs_valuation(ts.rows[static_cast<size_t>(j)])) continue;
        if (row >= 0) return bad();
        row = j;
    }
    if (row < 0) return SignedMonomial{0, 0, 0};
    return from_row(ts.rows[static_cast<size_t>(row)], row);
}

bool value_stabilized(const Value& v, int qorder) {
    if (std::holds_alternative<Rational>(v)) return std::get<Rational>(v) == 0;
    if (std::holds_alternative<QSeries>(v)) {
        auto val = qs_valuation(std::get<QSeries>(v));
        return !val || *val >= qorder;
    }
    for (const auto& row : std::get<TSeries>(v).rows) {
        auto val = qs_valuation(row);
        if (val && *val < qorder) return false;
    }
    return true;
}

Value eval_rec(const ExprPtr& e, EvalCtx& ctx);

Value eval_sum(const ExprPtr& e, EvalCtx& ctx) {
    const std::string& idx = e->args[0]->name;
    long long lo = to_int(eval_rec(e->args[1], ctx), "sum bound");
    bool infinite =
        e->args[2]->kind == Expr::Kind::Name && e->args[2]->name == "inf";
    long long hi = infinite ? 0 : to_int(eval_rec(e->args[2], ctx), "sum bound");

    auto saved = ctx.bound.find(idx) != ctx.bound.end()
                     ? std::optional<long long>(ctx.bound[idx])
                     : std::nullopt;
    Value acc = Rational(0);
    long long cap = lo + 4LL * ctx.qorder + 16;
    int stable = 0;
    for (long long n = lo; infinite || n <= hi; ++n) {
        ctx.bound[idx] = n;
        Value term = eval_rec(e->args[3], ctx);
        acc = value_add(acc, term, ctx, 1);
        if (infinite) {
            if (value_stabilized(term, ctx.qorder)) {
                if (++stable >= 5) break;
            } else {
                stable = 0;
            }
            if (n >= cap) {
                if (saved)
                    ctx.bound[idx] = *saved;
                else
                    ctx.bound.erase(idx);
                throw series_error("sum does not stabilize");
            }
        }
    }
    if (saved)
        ctx.bound[idx] = *saved;
    else
        ctx.bound.erase(idx);
    return acc;
}

Value eval_call(const ExprPtr& e, EvalCtx& ctx) {
    if (e->name == "sum") return eval_sum(e, ctx);
    if (e->name == "catalog") return named_series(e->args[0]->name, ctx.qorder);
    if (e->name == "eps") {
        Value v = eval_rec(e->args[0], ctx);
        if (!std::holds_alternative<TSeries>(v))
            throw series_error("eps expects a series in t");
        return epsilon_of_tseries(std::get<TSeries>(v));
    }
    if (e->name == "poch" || e->name == "pochinf") {
        SignedMonomial arg = value_to_monomial(eval_rec(e->args[0], ctx));
        long long base = to_int(eval_rec(e->args[1], ctx), "pochhammer base");
        long long count = kInfinity;
        if (e->name == "poch") {
            count = to_int(eval_rec(e->args[2], ctx), "pochhammer count");
            if (count < 0) throw series_error("negative pochhammer count");
        }
        if (arg.tpow > 0)
            return pochhammer_t(arg, static_cast<int>(base), static_cast<int>(count), ctx.qorder,
                                ctx.torder);
        return pochhammer(arg, static_cast<int>(base), static_cast<int>(count), ctx.qorder);
    }
    if (e->name == "qbinom") {
        long long n = to_int(eval_rec(e->args[0], ctx), "binomial argument");
        long long m = to_int(eval_rec(e->args[1], ctx), "binomial argument");
        return gaussian_binomial(static_cast<int>(n), static_cast<int>(m), ctx.qorder);
    }
    if (e->name == "lambert") {
        long long s = to_int(eval_rec(e->args[0], ctx), "lambert stride");
        long long o = to_int(eval_rec(e->args[1], ctx), "lambert offset");
        long long sg = to_int(eval_rec(e->args[2], ctx), "lambert sign");
        long long st = to_int(eval_rec(e->args[3], ctx), "lambert start");
        return lambert_sum(static_cast<int>(s), static_cast<int>(o), static_cast<int>(sg),
                           static_cast<int>(st), ctx.qorder);
    }
    throw series_error("unknown builtin '" + e->name + "'");
}

Value eval_rec(const ExprPtr& e, EvalCtx& ctx) {
    switch (e->kind) {
        case Expr::Kind::Number:
            return e->number;
        case Expr::Kind::VarQ:
            return QSeries::monomial(1, 1, ctx.qorder);
        case Expr::Kind::VarT:
            return ts_shift(TSeries::one(ctx.torder, ctx.qorder), 1, 0);
        case Expr::Kind::Name: {
            auto b = ctx.bound.find(e->name);
            if (b != ctx.bound.end()) return Rational(b->second);
            auto l = ctx.lets->find(e->name);
            if (l != ctx.lets->end()) return l->second;
            throw series_error("unknown name '" + e->name + "'");
        }
        case Expr::Kind::Power: {
            long long ex = to_int(eval_rec(e->args[1], ctx), "exponent");
            return value_pow(eval_rec(e->args[0], ctx), ex, ctx);
        }
        case Expr::Kind::Binary: {
            Value a = eval_rec(e->args[0], ctx);
            Value b = eval_rec(e->args[1], ctx);
            switch (e->op) {
                case '+':
                    return value_add(a, b, ctx, 1);
                case '-':
                    return value_add(a, b, ctx, -1);
                case '*':
                    return value_mul(a, b, ctx);
                case '/':
                    return value_div(a, b, ctx);
            }
            throw series_error("bad operator");
        }
        case Expr::Kind::Call:
            return eval_call(e, ctx);
    }
    throw series_error("bad expression");
}

IdentityReport compare_values(const std::string& id, const Value& a, const Value& b,
                              const EvalCtx& ctx) {
    int r = std::max(rank(a), rank(b));
    if (r <= 1) return make_report(id, ctx.qorder, qs_sub(as_q(a, ctx), as_q(b, ctx)));
    TSeries d = ts_sub(as_t(a, ctx), as_t(b, ctx));
    int bad_row = -1;
    for (int j = 0; j < d.torder() && bad_row < 0; ++j)
        if (qs_valuation(d.rows[static_cast<size_t>(j)])) bad_row = j;
    IdentityReport rep = make_report(
        id, ctx.qorder, bad_row < 0 ? QSeries(ctx.qorder) : d.rows[static_cast<size_t>(bad_row)]);
    if (bad_row >= 0) rep.detail = "first differing t-power: " + std::to_string(bad_row);
    return rep;
}

std::string dump_value(const Value& v) {
    if (std::holds_alternative<Rational>(v)) return Rational(std::get<Rational>(v)).str();
    if (std::holds_alternative<QSeries>(v)) return qs_str(std::get<QSeries>(v));
    const TSeries& ts = std::get<TSeries>(v);
    std::string out;
    for (int j = 0; j < ts.torder(); ++j) {
        const QSeries& row = ts.rows[static_cast<size_t>(j)];
        if (!qs_valuation(row)) continue;
        if (!out.empty()) out += "\n";
        out += "t^" + std::to_string(j) + ": " + qs_str(row);
    }
    return out.empty() ? "0" : out;
}

}  // namespace

Script parse_script(const std::string& text) { return Parser(text).script(); }

ExprPtr parse_expression(const std::string& text) { return Parser(text).whole_expression(); }

std::string print_expr(const ExprPtr& e) {
    std::ostringstream os;
    print_rec(os, e);
    return os.str();
}

std::string print_script(const Script& s) {
    std::ostringstream os;
    for (const auto& st : s.statements) {
        switch (st.kind) {
            case Statement::Kind::Let:
                os << "let " << st.name << " = " << print_expr(st.exprs[0]) << "\n";
                break;
            case Statement::Kind::AssertEq:
                os << "assert_eq(" << print_expr(st.exprs[0]) << ", " << print_expr(st.exprs[1])
                   << ")\n";
                break;
            case Statement::Kind::Dump:
                os << "dump(" << print_expr(st.exprs[0]) << ")\n";
                break;
        }
    }
    return os.str();
}

Value eval_expr(const ExprPtr& e, const std::map<std::string, Value>& lets, int qorder,
                int torder) {
    if (qorder < 1) throw series_error("qorder must be positive");
    EvalCtx ctx{qorder, torder > 0 ? torder : qorder + 2, &lets, {}};
    return eval_rec(e, ctx);
}

Value eval_expression(const std::string& text, int qorder, int torder) {
    std::map<std::string, Value> lets;
    return eval_expr(parse_expression(text), lets, qorder, torder);
}

ScriptResult run_script_text(const std::string& text, int qorder, int torder) {
    Script sc = parse_script(text);
    std::map<std::string, Value> lets;
    EvalCtx ctx{qorder, torder > 0 ? torder : qorder + 2, &lets, {}};
    ScriptResult res;
    int stmt_no = 0;
    for (const auto& st : sc.statements) {
        ++stmt_no;
        try {
            switch (st.kind) {
                case Statement::Kind::Let:
                    lets[st.name] = eval_rec(st.exprs[0], ctx);
                    break;
                case Statement::Kind::AssertEq: {
                    Value a = eval_rec(st.exprs[0], ctx);
                    Value b = eval_rec(st.exprs[1], ctx);
                    IdentityReport rep =
                        compare_values("stmt" + std::to_string(stmt_no), a, b, ctx);
                    res.all_pass = res.all_pass && rep.pass;
                    res.asserts.push_back(std::move(rep));
                    break;
                }
                case Statement::Kind::Dump:
                    res.dumps.push_back(dump_value(eval_rec(st.exprs[0], ctx)));
                    break;
            }
        } catch (const series_error& err) {
            throw series_error("statement " + std::to_string(stmt_no) + ": " + err.what());
        }
    }
    return res;
}

ScriptResult run_script_file(const std::string& path, int qorder, int torder) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw series_error("cannot read script: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_script_text(buf.str(), qorder, torder);
}

}  // namespace qtails
