#include "parreg/classify.hpp"

#include <algorithm>
#include <cstdlib>

namespace parreg {

namespace {

constexpr std::array<Status, 3> kAllStatus = {Status::PR, Status::NotPR, Status::Unknown};
constexpr std::array<Domain, 3> kAllDomain = {Domain::N, Domain::Z, Domain::Q};
constexpr std::array<UnknownReason, 4> kAllReasons = {UnknownReason::None, UnknownReason::HypothesesUnmet,
                                                      UnknownReason::BoundExhausted, UnknownReason::BudgetExceeded};

std::size_t idx(Domain d) { return static_cast<std::size_t>(d); }

BigInt big(std::uint64_t v) { return BigInt(std::to_string(v), 10); }

bool is_power(const Rat& q, unsigned long k) { return nth_power_in_Q(q, k).has_value(); }

// Status and domain each rule is allowed to assert.
bool rule_shape_ok(const Certificate& c) {
    const auto& r = c.rule;
    const bool pr = c.status == Status::PR;
    const bool neg = c.status == Status::NotPR;
    if (r == "R1" || r == "R3") return pr && c.domain == Domain::N;
    if (r == "R2" || r == "R9") return neg && c.domain == Domain::Z;
    if (r == "R4") return pr && (c.domain == Domain::N || c.domain == Domain::Z);
    if (r == "R4'") return neg && c.domain == Domain::N;
    if (r == "R5" || r == "R6" || r == "R7" || r == "R8") return neg && c.domain == Domain::Q;
    if (r == "S1") return pr && c.domain == Domain::Z;
    if (r == "S2" || r == "S3" || r == "S4") return neg && c.domain == Domain::Z;
    return false;
}

// Prime p qualifies when v_p((a+b)/c) lies outside nN u {0}, or lies in nN
// with a unit part that is not an n-th power in Q_p.
bool padic_eligible(const Rat& sum_ratio, std::uint64_t p, unsigned n, long v, bool& via_unit) {
    via_unit = false;
    if (v == 0) return false;
    if (v < 0 || v % static_cast<long>(n) != 0) return true;
    const Rat unit = sum_ratio / Rat(big(p)).pow_signed(v);
    if (!nth_power_in_Qp(unit, p, n)) {
        via_unit = true;
        return true;
    }
    return false;
}

bool reverify_body(const Certificate& cert, const TheoremRule& t) {
    const bool sum_zero = t.a + t.b == 0;
    if (cert.rule == "R1") return t.m >= 2 && t.n >= 2 && sum_zero;
    if (cert.rule == "R2") return t.m >= 2 && t.n >= 2 && !sum_zero;
    if (cert.rule == "R3") return t.m == 1 && sum_zero;
    return false;
}

bool reverify_body(const Certificate& cert, const RationalRoot& r) {
    if (r.n == 0 || r.root.pow(r.n) != r.value) return false;
    if (r.nonneg && r.root.sign() < 0) return false;
    if (cert.domain == Domain::N && !r.nonneg) return false;
    return true;
}

bool reverify_body(const Certificate&, const NonPowers& np) {
    if (np.values.empty() || np.k == 0) return false;
    return std::none_of(np.values.begin(), np.values.end(), [&](const Rat& v) { return is_power(v, np.k); });
}

bool reverify_body(const Certificate&, const SquareObstruction& s) {
    if (s.ratios[0] + s.ratios[1] != s.ratios[2]) return false;
    const Rat product = s.ratios[0] * s.ratios[1] * s.ratios[2];
    return std::none_of(s.ratios.begin(), s.ratios.end(), [](const Rat& v) { return is_power(v, 2); }) &&
           !is_power(product, 2);
}

bool reverify_body(const Certificate&, const WitnessCertificate& w) {
    return w.witness.lower_bound_satisfied && w.witness.targets.size() == 3 && reverify(w.witness, true);
}

bool reverify_body(const Certificate&, const PadicObstruction& o) {
    if (!is_prime(o.p) || o.n == 0) return false;
    if (o.ratios[0] + o.ratios[1] != o.ratios[2] || o.ratios[2].is_zero()) return false;
    const long v = valuation(o.ratios[2], o.p);
    if (v != o.valuation) return false;
    bool via_unit = false;
    if (!padic_eligible(o.ratios[2], o.p, o.n, v, via_unit) || via_unit != o.via_unit_part) return false;
    return std::none_of(o.ratios.begin(), o.ratios.end(), [&](const Rat& r) { return nth_power_in_Qp(r, o.p, o.n); });
}

bool reverify_body(const Certificate&, const SignObstruction& s) { return sign_obstructed(s.a, s.b, s.c); }

bool reverify_body(const Certificate& cert, const SystemIntersection& s) {
    if (s.n == 0 || s.k == 0) return false;
    if (cert.rule == "S1") {
        if (!s.member || !s.root || s.k != s.n) return false;
        if (std::find(s.intersection.begin(), s.intersection.end(), *s.member) == s.intersection.end()) return false;
        return s.root->pow(s.n) == *s.member;
    }
    const unsigned expected_k = s.n % 4 == 0 ? s.n / 2 : s.n;
    if (s.k != expected_k || s.member || s.root) return false;
    if ((cert.rule == "S2") != (s.n % 4 != 0)) return false;
    return std::none_of(s.intersection.begin(), s.intersection.end(), [&](const Rat& v) { return is_power(v, s.k); });
}

bool reverify_body(const Certificate&, const SystemWitnessCertificate& s) {
    if (s.witness.witness.n != s.system.n) return false;
    return reverify(s.system, s.witness);
}

Certificate make(std::string rule, Status status, Domain domain, CertificateBody body) {
    return Certificate{std::move(rule), status, domain, std::move(body)};
}

void settle(Verdict& v, bool negative_search_ran, bool hypotheses_met, bool witness_found) {
    const bool open = std::any_of(kAllDomain.begin(), kAllDomain.end(),
                                  [&](Domain d) { return v.status(d) == Status::Unknown; });
    if (!open) {
        v.set_reason(UnknownReason::None);
    } else if (v.reason() == UnknownReason::None) {
        const bool bound = negative_search_ran && hypotheses_met && !witness_found &&
                           v.status(Domain::Q) == Status::Unknown;
        v.set_reason(bound ? UnknownReason::BoundExhausted : UnknownReason::HypothesesUnmet);
    }
}

} // namespace

std::string to_string(Status s) {
    switch (s) {
    case Status::PR: return "PR";
    case Status::NotPR: return "NOT_PR";
    case Status::Unknown: return "UNKNOWN";
    }
    return "?";
}

std::string to_string(Domain d) {
    switch (d) {
    case Domain::N: return "N";
    case Domain::Z: return "Z";
    case Domain::Q: return "Q";
    }
    return "?";
}

std::string to_string(UnknownReason r) {
    switch (r) {
    case UnknownReason::None: return "none";
    case UnknownReason::HypothesesUnmet: return "hypotheses-unmet";
    case UnknownReason::BoundExhausted: return "bound-exhausted";
    case UnknownReason::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

Status status_from_string(const std::string& s) {
    for (auto v : kAllStatus) {
        if (to_string(v) == s) return v;
    }
    throw std::invalid_argument("unknown status '" + s + "'");
}

Domain domain_from_string(const std::string& s) {
    for (auto v : kAllDomain) {
        if (to_string(v) == s) return v;
    }
    throw std::invalid_argument("unknown domain '" + s + "'");
}

UnknownReason unknown_reason_from_string(const std::string& s) {
    for (auto v : kAllReasons) {
        if (to_string(v) == s) return v;
    }
    throw std::invalid_argument("unknown reason '" + s + "'");
}

bool sign_obstructed(std::int64_t a, std::int64_t b, std::int64_t c) {
    auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
    return sgn(a) == sgn(b) && sgn(c) == -sgn(a) && sgn(a) != 0;
}

void Verdict::set(Domain d, Status s) {
    Status& cur = status_[idx(d)];
    if (cur == s) return;
    if (cur != Status::Unknown) {
        throw InternalInconsistency("verdict clash over " + to_string(d) + ": " + to_string(cur) + " vs " +
                                    to_string(s));
    }
    cur = s;
}

void Verdict::apply(Certificate cert) {
    const Status s = cert.status;
    const Domain d = cert.domain;
    if (s == Status::Unknown) throw InternalInconsistency("certificate without a decided status");
    certificates_.push_back(std::move(cert));
    if (s == Status::PR) {
        for (auto dom : kAllDomain) {
            if (idx(dom) >= idx(d)) set(dom, Status::PR);
        }
    } else {
        for (auto dom : kAllDomain) {
            if (idx(dom) <= idx(d)) set(dom, Status::NotPR);
        }
    }
}

Verdict Verdict::restore(std::string subject, std::array<Status, 3> statuses, std::vector<Certificate> certs,
                         UnknownReason reason) {
    Verdict v;
    v.subject_ = std::move(subject);
    v.status_ = statuses;
    v.certificates_ = std::move(certs);
    v.reason_ = reason;
    if (!v.lattice_consistent()) throw InternalInconsistency("restored verdict violates the lattice");
    return v;
}

bool Verdict::lattice_consistent() const {
    const Status n = status(Domain::N), z = status(Domain::Z), q = status(Domain::Q);
    if (n == Status::PR && z != Status::PR) return false;
    if (z == Status::PR && q != Status::PR) return false;
    if (q == Status::NotPR && z != Status::NotPR) return false;
    if (z == Status::NotPR && n != Status::NotPR) return false;
    for (auto d : kAllDomain) {
        const Status s = status(d);
        if (s == Status::Unknown) continue;
        bool supported = std::any_of(certificates_.begin(), certificates_.end(), [&](const Certificate& c) {
            if (c.status != s) return false;
            return s == Status::PR ? idx(c.domain) <= idx(d) : idx(c.domain) >= idx(d);
        });
        if (!supported) return false;
    }
    for (const auto& c : certificates_) {
        if (c.status == Status::Unknown || status(c.domain) != c.status) return false;
    }
    return true;
}

bool Verdict::fully_decided() const {
    return std::none_of(status_.begin(), status_.end(), [](Status s) { return s == Status::Unknown; });
}

std::vector<std::string> Verdict::rules() const {
    std::vector<std::string> out;
    for (const auto& c : certificates_) out.push_back(c.rule);
    return out;
}

Verdict classify_equation(const EquationSpec& eq, const ClassifyConfig& config) {
    Verdict v;
    v.set_subject(eq.str());
    const bool sum_zero = eq.a + eq.b == 0;
    const TheoremRule structural{eq.a, eq.b, eq.m, eq.n};

    if (eq.m >= 2) {
        if (sum_zero) {
            v.apply(make("R1", Status::PR, Domain::N, structural));
        } else {
            v.apply(make("R2", Status::NotPR, Domain::Z, structural));
        }
        if (v.status(Domain::N) == Status::Unknown && sign_obstructed(eq.a, eq.b, eq.c)) {
            v.apply(make("R4'", Status::NotPR, Domain::N, SignObstruction{eq.a, eq.b, eq.c}));
        }
        settle(v, false, false, false);
        return v;
    }

    const auto ratios = eq.ratios();

    // Positive side.
    if (sum_zero) {
        v.apply(make("R3", Status::PR, Domain::N, structural));
    } else {
        bool fired = false;
        for (std::size_t i = 0; i < 3 && !fired; ++i) {
            if (auto root = nth_power_in_Q_nonneg(ratios[i], eq.n)) {
                v.apply(make("R4", Status::PR, Domain::N, RationalRoot{kRatioNames[i], ratios[i], *root, eq.n, true}));
                fired = true;
            }
        }
        for (std::size_t i = 0; i < 3 && !fired; ++i) {
            if (auto root = nth_power_in_Q(ratios[i], eq.n)) {
                v.apply(make("R4", Status::PR, Domain::Z, RationalRoot{kRatioNames[i], ratios[i], *root, eq.n, false}));
                fired = true;
            }
        }
    }

    // Negative side. A ratio of 0 is an n-th power, so every rule is silent.
    bool hypotheses_met = false;
    bool witness_found = false;
    if (!sum_zero) {
        const std::vector<Rat> targets(ratios.begin(), ratios.end());
        const unsigned n = eq.n;
        auto none_power = [&](unsigned long k) {
            return std::none_of(targets.begin(), targets.end(), [&](const Rat& r) { return is_power(r, k); });
        };

        bool negative = false;
        if (n % 2 == 1 && none_power(n)) {
            v.apply(make("R5", Status::NotPR, Domain::Q, NonPowers{targets, n}));
            negative = true;
        }
        if (!negative && n % 2 == 0 && n != 4 && n != 8 && none_power(n / 2)) {
            v.apply(make("R6", Status::NotPR, Domain::Q, NonPowers{targets, n / 2}));
            negative = true;
        }
        if (!negative && n % 2 == 0 && none_power(2) && !is_power(ratios[0] * ratios[1] * ratios[2], 2)) {
            v.apply(make("R7", Status::NotPR, Domain::Q, SquareObstruction{ratios}));
            negative = true;
        }

        hypotheses_met = check_hypotheses(targets, n).satisfied;
        BigInt lower = BigInt(std::to_string(std::llabs(eq.a)), 10) + BigInt(std::to_string(std::llabs(eq.b)), 10);
        lower = std::max(lower, BigInt(std::to_string(std::llabs(eq.c)), 10));
        auto witness = find_witness_prime(targets, n, lower, {config.witness_bound, config.threads});
        if (witness) {
            witness_found = true;
            v.apply(make("R8", Status::NotPR, Domain::Q, WitnessCertificate{*witness}));
            negative = true;
        }

        if (!negative) {
            try {
                const Factorization f = factor(ratios[2], config.budget);
                for (const auto& [prime, e] : f.exponents) {
                    if (!mpz_fits_ulong_p(prime.get_mpz_t())) continue;
                    const std::uint64_t p = prime.get_ui();
                    bool via_unit = false;
                    if (!padic_eligible(ratios[2], p, n, e, via_unit)) continue;
                    const bool obstructed = std::none_of(ratios.begin(), ratios.end(),
                                                         [&](const Rat& r) { return nth_power_in_Qp(r, p, n); });
                    if (!obstructed) continue;
                    v.apply(make("R9", Status::NotPR, Domain::Z, PadicObstruction{p, n, e, via_unit, ratios}));
                    break;
                }
            } catch (const FactorizationBudgetExceeded&) {
                v.set_reason(UnknownReason::BudgetExceeded);
            }
        }
    }

    if (v.status(Domain::N) == Status::Unknown && sign_obstructed(eq.a, eq.b, eq.c)) {
        v.apply(make("R4'", Status::NotPR, Domain::N, SignObstruction{eq.a, eq.b, eq.c}));
    }
    settle(v, !sum_zero, hypotheses_met, witness_found);
    return v;
}

Verdict classify_system(const SystemSpec& system, const ClassifyConfig& config) {
    if (system.rows.empty()) throw std::invalid_argument("classify_system: empty system");
    const auto inter = system.ratio_intersection();
    const unsigned n = system.n;

    // Rows with identical ratio sets are the same equation up to x <-> y.
    if (inter.size() == 3) {
        const auto& r = system.rows.front();
        Verdict v = classify_equation(EquationSpec::make(r.a, r.b, r.c, 1, n), config);
        std::string subject = "system of " + std::to_string(system.rows.size()) + " row(s) equivalent to " + v.subject();
        v.set_subject(subject);
        return v;
    }

    Verdict v;
    v.set_subject("system of " + std::to_string(system.rows.size()) + " rows, n=" + std::to_string(n));

    for (const auto& member : inter) {
        if (auto root = nth_power_in_Q(member, n)) {
            v.apply(make("S1", Status::PR, Domain::Z, SystemIntersection{inter, n, n, member, *root}));
            settle(v, false, false, false);
            return v;
        }
    }

    const unsigned k = n % 4 == 0 ? n / 2 : n;
    const bool none_k = std::none_of(inter.begin(), inter.end(), [&](const Rat& r) { return is_power(r, k); });
    if (none_k) {
        v.apply(make(n % 4 == 0 ? "S3" : "S2", Status::NotPR, Domain::Z,
                     SystemIntersection{inter, n, k, std::nullopt, std::nullopt}));
        settle(v, false, false, false);
        return v;
    }

    if (auto w = find_system_witness(system, {config.witness_bound, config.threads})) {
        v.apply(make("S4", Status::NotPR, Domain::Z, SystemWitnessCertificate{system, *w}));
    }
    settle(v, false, false, false);
    return v;
}

bool reverify(const Certificate& cert) {
    if (!rule_shape_ok(cert)) return false;
    try {
        return std::visit([&](const auto& body) { return reverify_body(cert, body); }, cert.body);
    } catch (const std::exception&) {
        return false;
    }
}

bool reverify(const Verdict& verdict) {
    if (!verdict.lattice_consistent()) return false;
    return std::all_of(verdict.certificates().begin(), verdict.certificates().end(),
                       [](const Certificate& c) { return reverify(c); });
}

} // namespace parreg
