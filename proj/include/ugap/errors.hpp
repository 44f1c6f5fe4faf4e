#pragma once

#include <stdexcept>
#include <string>

namespace ugap {

// Base for every error raised by the library; `kind()` is what the CLI prints.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error("resource", what) {}
};

// A transition system violates the standard-form conditions.
class StructuralError : public Error {
public:
    explicit StructuralError(const std::string& what) : Error("structural", what) {}
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error("convergence", what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// Search ran out of budget; carries whatever was found so far.
template <class Partial>
class BudgetExhausted : public Error {
public:
    BudgetExhausted(const std::string& what, Partial partial)
        : Error("budget", what), partial_(std::move(partial)) {}
    const Partial& partial() const noexcept { return partial_; }

private:
    Partial partial_;
};

}  // namespace ugap
