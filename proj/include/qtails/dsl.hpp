#pragma once
#include "qtails/report.hpp"
#include "qtails/series.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qtails {

// Expression AST for the identity-description language. Parenthesization is
// structural only; a printed tree reparses to an equal tree.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, VarQ, VarT, Name, Binary, Power, Call };
    Kind kind = Kind::Number;
    Rational number;            // Number (nonnegative integer at parse time)
    std::string name;           // Name; also the callee for Call
    char op = 0;                // Binary: one of + - * /
    std::vector<ExprPtr> args;  // Binary: lhs, rhs; Power: base, exponent; Call: arguments
};

struct Statement {
    enum class Kind { Let, AssertEq, Dump };
    Kind kind = Kind::Dump;
    std::string name;  // Let target
    std::vector<ExprPtr> exprs;
    int line = 0;
};

struct Script {
    std::vector<Statement> statements;
};

class dsl_parse_error : public std::runtime_error {
  public:
    dsl_parse_error(const std::string& what, int line, int col)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

  private:
    int line_;
    int col_;
};

Script parse_script(const std::string& text);
ExprPtr parse_expression(const std::string& text);

// deterministic printer; parse(print(parse(s))) equals parse(s) structurally
std::string print_expr(const ExprPtr& e);
std::string print_script(const Script& s);

using Value = std::variant<Rational, QSeries, TSeries>;

// evaluate with optional let-bindings; torder <= 0 selects qorder + 2
Value eval_expr(const ExprPtr& e, const std::map<std::string, Value>& lets, int qorder,
                int torder = 0);
Value eval_expression(const std::string& text, int qorder, int torder = 0);

struct ScriptResult {
    std::vector<IdentityReport> asserts;  // one per assert_eq, in statement order
    std::vector<std::string> dumps;       // one per dump, in statement order
    bool all_pass = true;
};

ScriptResult run_script_text(const std::string& text, int qorder, int torder = 0);
ScriptResult run_script_file(const std::string& path, int qorder, int torder = 0);

}  // namespace qtails
