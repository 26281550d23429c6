#pragma once

#include <iomanip>

#include <json.hpp>

#include "a3c/connections.hpp"
#include "a3c/deform.hpp"
#include "a3c/dsl.hpp"
#include "a3c/spin7.hpp"

namespace a3c {
namespace report {

inline constexpr const char* kVersion = "1.0.0";

namespace detail {

/// Compact SHA-256, enough to fingerprint input files.
class Sha256 {
public:
    static std::string hex(const std::string& data) {
        static constexpr std::uint32_t k[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
            0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
            0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
            0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
            0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
            0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
            0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
            0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
            0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
            0xc67178f2};
        std::uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                              0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
        std::string msg = data;
        std::uint64_t bitlen = static_cast<std::uint64_t>(msg.size()) * 8;
        msg += static_cast<char>(0x80);
        while (msg.size() % 64 != 56) msg += '\0';
        for (int i = 7; i >= 0; --i) msg += static_cast<char>((bitlen >> (8 * i)) & 0xff);
        auto rotr = [](std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); };
        for (std::size_t off = 0; off < msg.size(); off += 64) {
            std::uint32_t w[64];
            for (int i = 0; i < 16; ++i)
                w[i] = (static_cast<std::uint8_t>(msg[off + 4 * i]) << 24) |
                       (static_cast<std::uint8_t>(msg[off + 4 * i + 1]) << 16) |
                       (static_cast<std::uint8_t>(msg[off + 4 * i + 2]) << 8) |
                       static_cast<std::uint8_t>(msg[off + 4 * i + 3]);
            for (int i = 16; i < 64; ++i) {
                std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
                std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
                w[i] = w[i - 16] + s0 + w[i - 7] + s1;
            }
            std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6],
                          hh = h[7];
            for (int i = 0; i < 64; ++i) {
                std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
                std::uint32_t ch = (e & f) ^ (~e & g);
                std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
                std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
                std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
                std::uint32_t t2 = s0 + maj;
                hh = g;
                g = f;
                f = e;
                e = d + t1;
                d = c;
                c = b;
                b = a;
                a = t1 + t2;
            }
            h[0] += a;
            h[1] += b;
            h[2] += c;
            h[3] += d;
            h[4] += e;
            h[5] += f;
            h[6] += g;
            h[7] += hh;
        }
        std::ostringstream os;
        for (auto v : h) os << std::hex << std::setw(8) << std::setfill('0') << v;
        return os.str();
    }
};

} // namespace detail

struct CheckResult {
    std::string id;
    std::string ref;     // which identity or construction is exercised
    std::string status;  // "pass" | "fail" | "skip"
    std::string residual;
    std::vector<Scalar> residual_exprs; // for numeric cross-evaluation
};

struct Report {
    std::string input_digest;
    ClassificationReport classification;
    std::vector<CheckResult> checks;
    long timing_ms = 0;

    bool all_passed() const {
        for (auto& c : checks)
            if (c.status == "fail") return false;
        return true;
    }
};

inline nlohmann::ordered_json classification_json(const ClassificationReport& rep) {
    nlohmann::ordered_json j;
    j["valid_a3c"] = rep.valid_a3c;
    j["jacobi_ok"] = rep.jacobi_ok;
    j["reeb_killing_all"] = rep.reeb_killing_all;
    j["nijenhuis_skew_on_H"] = {rep.nijenhuis_skew_on_h[0], rep.nijenhuis_skew_on_h[1],
                                rep.nijenhuis_skew_on_h[2]};
    j["hypernormal"] = rep.hypernormal;
    j["reeb_commutator_delta"] =
        rep.reeb_commutator_delta ? nlohmann::ordered_json(rep.reeb_commutator_delta->str())
                                  : nlohmann::ordered_json(nullptr);
    j["reeb_killing_beta"] = rep.reeb_killing_beta
                                 ? nlohmann::ordered_json(rep.reeb_killing_beta->str())
                                 : nlohmann::ordered_json(nullptr);
    j["beta_undetermined"] = rep.beta_undetermined;
    j["canonical"] = rep.canonical;
    j["parallel"] = rep.parallel;
    j["three_delta_cosymplectic"] =
        rep.three_delta_cosymplectic ? nlohmann::ordered_json(rep.three_delta_cosymplectic->str())
                                     : nlohmann::ordered_json(nullptr);
    if (rep.three_alpha_delta_sasaki) {
        j["three_alpha_delta_sasaki"] = {{"alpha", rep.three_alpha_delta_sasaki->first.str()},
                                         {"delta", rep.three_alpha_delta_sasaki->second.str()}};
    } else {
        j["three_alpha_delta_sasaki"] = nullptr;
    }
    j["sasaki_underdetermined"] = rep.sasaki_underdetermined;
    j["degenerate"] = rep.degenerate;
    j["phi_compatible_exists"] = rep.phi_compatible_exists;
    return j;
}

/// Serialized report; timing is reported but never part of any digest, so
/// reports are byte-identical across runs once timing_ms is fixed.
inline nlohmann::ordered_json to_json(const Report& r, const Assignment& eval_at) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["input_sha256"] = r.input_digest;
    j["classification"] = classification_json(r.classification);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (auto& c : r.checks) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["paper_ref"] = c.ref;
        e["status"] = c.status;
        e["residual"] = c.residual;
        nlohmann::ordered_json subs = nlohmann::ordered_json::object();
        if (!eval_at.values().empty() && !c.residual_exprs.empty()) {
            std::string joined;
            for (auto& ex : c.residual_exprs) {
                try {
                    joined += (joined.empty() ? "" : "; ") + eval(ex, eval_at).str();
                } catch (const std::exception& err) {
                    joined += (joined.empty() ? "" : "; ") + std::string(err.what());
                }
            }
            for (auto& [k, v] : eval_at.values()) subs[k] = v.str();
            subs["residuals"] = joined;
        }
        e["substitutions"] = subs;
        checks.push_back(std::move(e));
    }
    j["checks"] = checks;
    j["timing_ms"] = r.timing_ms;
    return j;
}

namespace detail {

inline void push(Report& rep, const std::string& id, const std::string& ref, bool ok,
                 std::vector<Scalar> residuals = {}) {
    std::string text;
    for (auto& e : residuals) {
        if (e.is_zero()) continue;
        text += (text.empty() ? "" : "; ") + e.str();
    }
    rep.checks.push_back({id, ref, ok ? "pass" : "fail", text, std::move(residuals)});
}

inline void skip(Report& rep, const std::string& id, const std::string& ref,
                 const std::string& why) {
    rep.checks.push_back({id, ref, "skip", why, {}});
}

inline std::vector<Scalar> form_residual(const KForm& f) {
    std::vector<Scalar> out;
    for (auto& [idx, c] : f.coeffs()) out.push_back(c);
    return out;
}

} // namespace detail

inline void run_classify_suite(Report& rep, const A3CStructure& s) {
    using detail::push;
    auto v = validate_structure(s);
    push(rep, "classify/structure-axioms", "quaternionic-relations", v.ok);
    push(rep, "classify/jacobi", "lie-algebra-jacobi", rep.classification.jacobi_ok);
    for (int i = 1; i <= 3; ++i) {
        Trilinear r = lemma_n_residual(s, i);
        push(rep, "classify/nijenhuis-structural-identity-" + std::to_string(i),
             "nijenhuis-via-eta-phi-differentials", r.is_zero());
    }
    // Sphere decomposition residual at ten rational points.
    {
        std::array<Trilinear, 3> N{nijenhuis(s, 1), nijenhuis(s, 2), nijenhuis(s, 3)};
        Trilinear N12 = nijenhuis_pair(s, 1, 2), N13 = nijenhuis_pair(s, 1, 3),
                  N23 = nijenhuis_pair(s, 2, 3);
        std::vector<SphereParam> pts{{Rational(1), Rational(0), Rational(0)},
                                     {Rational(0), Rational(-1), Rational(0)},
                                     {Rational(3, 5), Rational(4, 5), Rational(0)},
                                     {Rational(0), Rational(3, 5), Rational(-4, 5)},
                                     {Rational(4, 5), Rational(0), Rational(3, 5)},
                                     {Rational(1, 3), Rational(2, 3), Rational(2, 3)},
                                     {Rational(-2, 3), Rational(1, 3), Rational(2, 3)},
                                     {Rational(2, 7), Rational(3, 7), Rational(6, 7)},
                                     {Rational(6, 7), Rational(-2, 7), Rational(3, 7)},
                                     {Rational(-3, 5), Rational(0), Rational(4, 5)}};
        bool ok = true;
        for (auto& a : pts) {
            Trilinear lhs = nijenhuis(s, sphere_structure(s, a));
            Scalar c1(a.a1 * a.a1), c2(a.a2 * a.a2), c3(a.a3 * a.a3);
            Scalar c12(a.a1 * a.a2), c13(a.a1 * a.a3), c23(a.a2 * a.a3);
            for (int p = 1; p <= s.dim() && ok; ++p)
                for (int q = p + 1; q <= s.dim() && ok; ++q)
                    for (int r = 1; r <= s.dim(); ++r) {
                        Scalar rhs = c1 * N[0].get(p, q, r) + c2 * N[1].get(p, q, r) +
                                     c3 * N[2].get(p, q, r) + c12 * N12.get(p, q, r) +
                                     c13 * N13.get(p, q, r) + c23 * N23.get(p, q, r);
                        if (lhs.get(p, q, r) != rhs) {
                            ok = false;
                            break;
                        }
                    }
        }
        push(rep, "classify/sphere-nijenhuis-decomposition", "sphere-nijenhuis-decomposition", ok);
    }
    if (rep.classification.three_alpha_delta_sasaki) {
        bool hyper = rep.classification.hypernormal;
        push(rep, "classify/generalized-kashiwada", "sasaki-family-is-hypernormal", hyper);
    }
}

inline void run_connection_suite(Report& rep, const A3CStructure& s) {
    using detail::push;
    using detail::skip;
    auto diag = phi_compatible_exists(s, SphereParam{Rational(1), Rational(0), Rational(0)});
    push(rep, "connection/phi-compatible-exists", "phi-compatible-existence-conditions", diag.exists);
    if (diag.exists) {
        Scalar gamma = Scalar::param("gamma");
        KForm T = phi_compatible_torsion(s, gamma);
        Connection c = connection_from_torsion(s.geometry, T);
        auto delta = reeb_commutator(s);
        bool ok = delta.has_value();
        if (ok) {
            Scalar coef = (Scalar(2) * *delta + gamma) * Scalar::rational(1, 2);
            for (int i = 1; i <= 3 && ok; ++i) {
                int jj = i % 3 + 1, kk = jj % 3 + 1;
                for (int a = 1; a <= s.dim() && ok; ++a) {
                    Vec want = coef * (Scalar(a == kk ? 1 : 0) * s.xi(jj) -
                                       Scalar(a == jj ? 1 : 0) * s.xi(kk));
                    if (!is_zero(Vec(c.derive(a, s.xi(i)) - want))) ok = false;
                }
            }
        }
        push(rep, "connection/family-nabla-xi", "reeb-derivative-of-compatible-family", ok);
    }
    if (!rep.classification.canonical) {
        std::string why = "structure is not canonical";
        if (rep.classification.reeb_killing_beta)
            why += " (beta = " + rep.classification.reeb_killing_beta->str() + ")";
        else
            why += " (no Reeb Killing function pattern)";
        rep.checks.push_back({"connection/canonical-exists", "canonical-connection-existence",
                              "fail", why, {}});
        return;
    }
    try {
        auto can = canonical_connection(s); // post-verifies the derivative displays
        push(rep, "connection/canonical-derivative-laws", "canonical-derivative-displays", true);
        auto relation = torsion_relation_check(s);
        std::vector<Scalar> resid;
        for (auto& r : relation.difference_residual)
            for (auto& e : detail::form_residual(r)) resid.push_back(e);
        push(rep, "connection/torsion-relation", "canonical-vs-characteristic-torsion",
             relation.all_zero, resid);
    } catch (const std::exception& e) {
        rep.checks.push_back({"connection/canonical-derivative-laws",
                              "canonical-derivative-displays", "fail", e.what(), {}});
    }
    if (rep.classification.three_alpha_delta_sasaki) {
        auto forms = sasaki_closed_forms(s);
        push(rep, "connection/sasaki-torsion-closed-forms", "canonical-torsion-closed-forms",
             forms.torsion_eta_deta_form && forms.torsion_phi_h_form);
        push(rep, "connection/sasaki-parallel-torsion", "canonical-torsion-is-parallel",
             forms.nabla_t_zero);
        push(rep, "connection/sasaki-dt-closed-forms", "torsion-differential-closed-forms",
             forms.dt_full_form && forms.dt_horizontal_form);
        push(rep, "connection/sasaki-horizontal-lemma", "horizontal-form-differentials",
             forms.dphi_h && forms.dpsi_h_zero && forms.d_eta_phi_h && forms.d_eta123);
    }
    // Cone checks need constant β < 0.
    try {
        auto cone = cone_checks(s);
        push(rep, "connection/cone-s-tensors", "cone-difference-tensors-coincide",
             cone.s_tensors_coincide);
        push(rep, "connection/cone-quaternion-relations", "cone-hyperhermitian-relations",
             cone.quaternion_relations && cone.j_squares);
    } catch (const NonNegativeBeta&) {
        skip(rep, "connection/cone-s-tensors", "cone-difference-tensors-coincide",
             "beta is not negative");
    }
}

inline void run_curvature_suite(Report& rep, const A3CStructure& s) {
    using detail::push;
    using detail::skip;
    if (!rep.classification.three_alpha_delta_sasaki) {
        skip(rep, "curvature/ricci-closed-forms", "ricci-closed-forms",
             "structure is not in the Sasaki family");
        return;
    }
    auto r = ricci_closed_forms(s);
    push(rep, "curvature/canonical-ricci", "canonical-ricci-closed-form", r.canonical_ricci_matches);
    push(rep, "curvature/riemannian-ricci", "riemannian-ricci-closed-form",
         r.riemannian_ricci_matches);
    push(rep, "curvature/einstein-factorization", "einstein-coefficient-factorization",
         r.einstein_factorization);
}

inline void run_deform_suite(Report& rep, const A3CStructure& s, const DeformParams& p) {
    using detail::push;
    auto d = h_deform(s, p);
    push(rep, "deform/deformed-structure-valid", "h-homothetic-deformation",
         validate_structure(d).ok && jacobi_check(d.geometry->brackets()).ok);
    if (rep.classification.three_alpha_delta_sasaki) {
        auto [alpha, delta] = *rep.classification.three_alpha_delta_sasaki;
        auto want = deform_parameters(alpha, delta, p);
        auto drep = classify(d);
        bool ok = drep.three_alpha_delta_sasaki && drep.three_alpha_delta_sasaki->first == want.first &&
                  drep.three_alpha_delta_sasaki->second == want.second;
        push(rep, "deform/parameter-transformation", "deformed-sasaki-parameters", ok);
        if (drep.three_alpha_delta_sasaki)
            push(rep, "deform/deformed-closed-forms", "canonical-torsion-closed-forms",
                 sasaki_closed_forms(d).all());
    } else if (rep.classification.three_delta_cosymplectic) {
        auto drep = classify(d);
        bool ok = drep.three_delta_cosymplectic &&
                  *drep.three_delta_cosymplectic ==
                      *rep.classification.three_delta_cosymplectic / p.c;
        push(rep, "deform/parameter-transformation", "deformed-cosymplectic-parameter", ok);
    }
}

inline void run_g2_suite(Report& rep, const A3CStructure& s) {
    using detail::push;
    using detail::skip;
    if (s.dim() != 7 || !rep.classification.three_alpha_delta_sasaki) {
        skip(rep, "g2/cocalibration", "cocalibrated-g2-structure",
             "needs a 7-dimensional Sasaki-family structure");
        return;
    }
    auto [alpha, delta] = *rep.classification.three_alpha_delta_sasaki;
    KForm resid = cocalibration_residual(s);
    push(rep, "g2/cocalibration", "cocalibrated-g2-structure", resid.is_zero(),
         detail::form_residual(resid));
    auto can = canonical_connection(s);
    KForm diff = g2_characteristic_torsion(s) - can.torsion;
    push(rep, "g2/characteristic-torsion", "g2-characteristic-torsion-equals-canonical",
         diff.is_zero(), detail::form_residual(diff));
    try {
        Spinor psi0 = canonical_spinor(s);
        push(rep, "g2/spinor-spectrum", "omega-action-spectrum", true);
        const auto& cl = build_clifford();
        SpinMat tm = cl.action(can.torsion);
        Spinor tpsi = Spinor::Constant(Scalar(0));
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) tpsi(r) += tm(r, c) * psi0(c);
        Scalar ev = -(Scalar(4) * alpha + Scalar(2) * delta);
        bool ok = true;
        for (int r = 0; r < 8; ++r)
            if (tpsi(r) != ev * psi0(r)) ok = false;
        push(rep, "g2/torsion-eigenvalue", "canonical-spinor-torsion-eigenvalue", ok);

        auto kn = generalized_killing_check(s, psi0);
        bool killing_ok = kn.vertical_uniform &&
                          kn.horizontal == Scalar(-Rational(3, 2)) * alpha &&
                          kn.vertical == (Scalar(2) * alpha - delta) * Scalar::rational(1, 2);
        for (int i = 1; i <= 3 && killing_ok; ++i) {
            Spinor psi_i = cl.apply(cl.kappa(i), psi0);
            auto ki = generalized_killing_check(s, psi_i);
            if (ki.mu[i - 1] != (Scalar(2) * alpha - delta) * Scalar::rational(1, 2))
                killing_ok = false;
            for (int j = 1; j <= 3; ++j)
                if (j != i &&
                    ki.mu[j - 1] != (Scalar(3) * delta - Scalar(2) * alpha) * Scalar::rational(1, 2))
                    killing_ok = false;
            if (ki.horizontal != alpha * Scalar::rational(1, 2)) killing_ok = false;
        }
        push(rep, "g2/generalized-killing-numbers", "generalized-killing-spinors", killing_ok);
    } catch (const std::exception& e) {
        rep.checks.push_back({"g2/spinor-spectrum", "omega-action-spectrum", "fail", e.what(), {}});
    }
}

inline std::vector<RatVec> default_s7_points(int count) {
    std::vector<std::vector<Rational>> raw{
        {Rational(9, 25), Rational(12, 25), Rational(0), Rational(12, 25), Rational(0),
         Rational(16, 25), Rational(0), Rational(0)},
        {Rational(0), Rational(9, 25), Rational(12, 25), Rational(0), Rational(12, 25), Rational(0),
         Rational(0), Rational(16, 25)},
        {Rational(1, 3), Rational(0), Rational(2, 3), Rational(0), Rational(0), Rational(2, 3),
         Rational(0), Rational(0)},
        {Rational(9, 25), Rational(0), Rational(12, 25), Rational(12, 25), Rational(0), Rational(0),
         Rational(16, 25), Rational(0)},
        {Rational(1), Rational(0), Rational(0), Rational(0), Rational(0), Rational(0), Rational(0),
         Rational(0)},
        {Rational(3, 5), Rational(0), Rational(0), Rational(4, 5), Rational(0), Rational(0),
         Rational(0), Rational(0)},
        {Rational(2, 7), Rational(3, 7), Rational(0), Rational(0), Rational(6, 7), Rational(0),
         Rational(0), Rational(0)},
        {Rational(0), Rational(0), Rational(0), Rational(1, 2), Rational(1, 2), Rational(1, 2),
         Rational(1, 2), Rational(0)}};
    std::vector<RatVec> out;
    for (int i = 0; i < count && i < static_cast<int>(raw.size()); ++i) {
        RatVec x(8);
        for (int j = 0; j < 8; ++j) x(j) = raw[i][j];
        out.push_back(std::move(x));
    }
    return out;
}

inline void run_s7_suite(Report& rep, int points) {
    using detail::push;
    auto pts = default_s7_points(points);
    bool comm = true, skew = true, nzero = false, nskew = true, a0 = true, tskew = true;
    for (auto& x : pts) {
        auto r = s7_point_checks(x);
        comm &= r.commutator_match;
        skew &= r.alpha_totally_skew;
        nskew &= r.nijenhuis_skew;
        nzero |= r.nijenhuis_nonzero;
        a0 &= r.a_tensors_vanish;
        tskew &= r.flat_torsion_skew;
    }
    push(rep, "s7/commutator-oracle", "sphere-frame-commutators", comm);
    push(rep, "s7/alpha-totally-skew", "structure-functions-skew", skew);
    push(rep, "s7/nijenhuis-skew", "pointwise-nijenhuis-skew", nskew);
    push(rep, "s7/not-hypernormal", "pointwise-nijenhuis-nonzero", nzero);
    push(rep, "s7/parallel", "a-tensors-vanish", a0);
    push(rep, "s7/flat-torsion-skew", "flat-connection-torsion", tskew);
}

struct RunOptions {
    std::vector<std::string> suites{"all"};
    std::optional<DeformParams> deform;
    Assignment eval_at;
    int s7_points = 4;
};

inline bool selected(const RunOptions& opt, const std::string& suite) {
    for (auto& s : opt.suites) {
        if (s == suite) return true;
        if (s == "all" && suite != "s7") return true;
    }
    return false;
}

/// Execute the selected suites for a parsed document.
inline Report run_checks(const dsl::AlgebraDoc& doc, const std::string& input_bytes,
                         const RunOptions& opt) {
    Report rep;
    rep.input_digest = detail::Sha256::hex(input_bytes);
    A3CStructure s = dsl::build(doc);
    rep.classification = classify(s);
    if (selected(opt, "classify")) run_classify_suite(rep, s);
    if (selected(opt, "connection")) run_connection_suite(rep, s);
    if (selected(opt, "curvature")) run_curvature_suite(rep, s);
    if (selected(opt, "deform"))
        run_deform_suite(rep, s, opt.deform.value_or(DeformParams{Scalar(1), Scalar(2)}));
    if (selected(opt, "g2")) run_g2_suite(rep, s);
    if (selected(opt, "s7")) run_s7_suite(rep, opt.s7_points);
    return rep;
}

} // namespace report
} // namespace a3c
