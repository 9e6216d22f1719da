#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "parreg/arith.hpp"
#include "parreg/equation.hpp"
#include "parreg/rat.hpp"
#include "parreg/witness.hpp"

namespace parreg {

enum class Status { PR, NotPR, Unknown };
enum class Domain { N, Z, Q };

std::string to_string(Status s);
std::string to_string(Domain d);
Status status_from_string(const std::string& s);
Domain domain_from_string(const std::string& s);

/// Why an UNKNOWN remains.
enum class UnknownReason { None, HypothesesUnmet, BoundExhausted, BudgetExceeded };
std::string to_string(UnknownReason r);
UnknownReason unknown_reason_from_string(const std::string& s);

/// A violation of the verdict lattice or a positive/negative clash.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Structural rules that depend on a, b, m, n only (R1, R2, R3).
struct TheoremRule {
    std::int64_t a = 0;
    std::int64_t b = 0;
    unsigned m = 1;
    unsigned n = 1;
    friend bool operator==(const TheoremRule&, const TheoremRule&) = default;
};

struct RationalRoot {
    std::string which;
    Rat value;
    Rat root;
    unsigned n = 1;
    bool nonneg = false;
    friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

/// None of `values` is a k-th power in Q.
struct NonPowers {
    std::vector<Rat> values;
    unsigned k = 1;
    friend bool operator==(const NonPowers&, const NonPowers&) = default;
};

struct SquareObstruction {
    std::array<Rat, 3> ratios;
    friend bool operator==(const SquareObstruction&, const SquareObstruction&) = default;
};

struct WitnessCertificate {
    WitnessPrime witness;
    friend bool operator==(const WitnessCertificate&, const WitnessCertificate&) = default;
};

struct PadicObstruction {
    std::uint64_t p = 2;
    unsigned n = 1;
    /// v_p((a+b)/c).
    long valuation = 0;
    /// Eligible through a non-power unit part at a valuation in nN.
    bool via_unit_part = false;
    std::array<Rat, 3> ratios;
    friend bool operator==(const PadicObstruction&, const PadicObstruction&) = default;
};

struct SignObstruction {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    friend bool operator==(const SignObstruction&, const SignObstruction&) = default;
};

struct SystemIntersection {
    std::vector<Rat> intersection;
    unsigned n = 1;
    /// Exponent the intersection was tested against (n or n/2).
    unsigned k = 1;
    /// Member found to be an n-th power (S1 only).
    std::optional<Rat> member;
    std::optional<Rat> root;
    friend bool operator==(const SystemIntersection&, const SystemIntersection&) = default;
};

struct SystemWitnessCertificate {
    SystemSpec system;
    SystemWitness witness;
    friend bool operator==(const SystemWitnessCertificate&, const SystemWitnessCertificate&) = default;
};

using CertificateBody = std::variant<TheoremRule, RationalRoot, NonPowers, SquareObstruction, WitnessCertificate,
                                     PadicObstruction, SignObstruction, SystemIntersection, SystemWitnessCertificate>;

struct Certificate {
    /// R1..R9, R4', S1..S4.
    std::string rule;
    Status status = Status::Unknown;
    Domain domain = Domain::Z;
    CertificateBody body;
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

class Verdict {
public:
    Status status(Domain d) const { return status_[static_cast<std::size_t>(d)]; }
    const std::vector<Certificate>& certificates() const { return certificates_; }
    UnknownReason reason() const { return reason_; }
    const std::string& subject() const { return subject_; }

    /// Records a certificate and propagates along
    /// PR(N) => PR(Z) => PR(Q) and NOT_PR(Q) => NOT_PR(Z) => NOT_PR(N).
    /// Throws InternalInconsistency on a clash.
    void apply(Certificate cert);
    /// Attaches a supporting certificate without changing any status.
    void attach(Certificate cert) { certificates_.push_back(std::move(cert)); }
    void set_reason(UnknownReason r) { reason_ = r; }
    void set_subject(std::string s) { subject_ = std::move(s); }
    /// Rebuilds a verdict from stored parts; throws InternalInconsistency
    /// when the statuses violate the lattice.
    static Verdict restore(std::string subject, std::array<Status, 3> statuses, std::vector<Certificate> certs,
                           UnknownReason reason);

    bool lattice_consistent() const;
    bool fully_decided() const;
    /// Rule tags in application order.
    std::vector<std::string> rules() const;

    friend bool operator==(const Verdict&, const Verdict&) = default;

private:
    void set(Domain d, Status s);

    std::string subject_;
    std::array<Status, 3> status_{Status::Unknown, Status::Unknown, Status::Unknown};
    std::vector<Certificate> certificates_;
    UnknownReason reason_ = UnknownReason::None;
};

struct ClassifyConfig {
    std::uint64_t witness_bound = 1'000'000;
    unsigned threads = 1;
    FactorBudget budget;
};

Verdict classify_equation(const EquationSpec& eq, const ClassifyConfig& config = {});
Verdict classify_system(const SystemSpec& system, const ClassifyConfig& config = {});

/// Re-checks one certificate from arithmetic primitives.
bool reverify(const Certificate& cert);
/// Lattice consistency plus every certificate.
bool reverify(const Verdict& verdict);

/// True when a, b share a sign opposite to c, so a*x + b*y = c*w^m*z^n has
/// no solution in positive integers.
bool sign_obstructed(std::int64_t a, std::int64_t b, std::int64_t c);

} // namespace parreg
