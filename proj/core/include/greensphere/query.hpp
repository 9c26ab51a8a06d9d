#pragma once

#include "greensphere/green_sphere.hpp"

#include <memory>
#include <string>
#include <vector>

namespace greensphere {

// Bundles the full tower of rings behind one configuration.
class Engine {
public:
    explicit Engine(Params params, const std::string& tables_path = "");

    const Params& params() const { return params_; }
    const KURing& ku() const { return ko_->ku(); }
    const KORing& ko() const { return *ko_; }
    const ClassicalSphere& sphere() const { return *sphere_; }
    const GreenRing& green() const { return *green_; }

private:
    Params params_;
    std::unique_ptr<KORing> ko_;
    std::unique_ptr<ClassicalSphere> sphere_;
    std::unique_ptr<GreenRing> green_;
};

struct ExprError : std::invalid_argument {
    explicit ExprError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct GreenExprTerm {
    BigInt coeff = 1;
    GenWord word;
};

// Grammar: expr := term ('+' term)*, term := (INT '*')? factor ('*' factor)*,
// factor := NAME '[' INT (',' INT)? ']' | '1'; NAME in {w,eta,tauh,mu,zeta,rho,xi}.
std::vector<GreenExprTerm> parse_green_expr(const std::string& text);

// Same shape over the classical basis names 1, g, rho[x], mu[x], xi[x],
// mu0rho[x], mu0^2rho[x] (spelled mu02rho), mu0mu[x]; x may be a half-integer n/2.
std::vector<std::pair<BigInt, SGenName>> parse_s_expr(const std::string& text);

GreenElement eval_green_expr(const GreenRing& ring, const std::string& text);
SElement eval_s_expr(const ClassicalSphere& sphere, const std::string& text);

std::string element_str(const GreenRing& ring, const GreenElement& x);
std::string element_str(const ClassicalSphere& sphere, const SElement& x);

// Structured query output; round-trips through JSON.
struct QueryResult {
    std::string kind;  // "group" | "element" | "selement"
    std::string ring;
    long long s = 0, c = 0;
    std::string group;
    std::vector<std::string> basis;
    std::vector<std::string> values;

    std::string to_json() const;
    static QueryResult from_json(const std::string& text);
    std::string text() const;
    bool operator==(const QueryResult& o) const;
};

QueryResult group_query(const Engine& engine, const std::string& ring, long long s, long long c);
QueryResult element_query(const GreenRing& ring, const GreenElement& x);
QueryResult selement_query(const ClassicalSphere& sphere, const SElement& x);

}  // namespace greensphere
