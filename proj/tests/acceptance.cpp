// Acceptance gate: one line per criterion, "PASS"/"FAIL" verdicts, exit 0
// only if every criterion holds. Criteria with pinned wall-clock budgets
// time themselves with steady_clock. The first argument must be the path
// to the ikv executable (used by the determinism criterion).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "ikv/ikeda.hpp"
#include "ikv/io.hpp"
#include "ikv/ivhs.hpp"
#include "ikv/koszul.hpp"
#include "ikv/polyring.hpp"
#include "ikv/rng.hpp"

using namespace ikv;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

PrimeField fresh_field(Rng& rng) {
    return PrimeField(random_prime(rng, 1ull << 30, 1ull << 31));
}

template <class F>
ring::BinaryForm<F> smooth_form(const F& field, unsigned d, Rng& rng) {
    std::size_t rejections = 0;
    return io::random_smooth_form(field, d, rng, rejections);
}

std::size_t genus(unsigned d) { return static_cast<std::size_t>(d - 1) * (d - 2) / 2; }

// 1. Graded dimensions of both rings at 20 random smooth forms per degree,
//    over fresh random primes, inside a two-minute budget.
Outcome criterion_hilbert() {
    const auto t0 = Clock::now();
    Rng master(20260801);
    std::size_t runs = 0;
    for (unsigned d = 4; d <= 7; ++d) {
        for (int i = 0; i < 20; ++i) {
            auto field = fresh_field(master);
            Rng rng(master.next());
            auto f = smooth_form(field, d, rng);
            auto plane = ring::JacobianRing<PrimeField>::binary(field, f);
            auto cover = ring::JacobianRing<PrimeField>::cover(field, f);
            const std::size_t g = genus(d);
            if (cover.piece(d - 3).dim() != g) return {false, "dim R_F^(d-3) != g"};
            if (cover.piece(2 * d - 3).dim() != g) return {false, "dim R_F^(2d-3) != g"};
            if (plane.piece(2 * d - 4).dim() != 1) return {false, "binary socle not a line"};
            if (plane.piece(2 * d - 3).dim() != 0) return {false, "binary ring alive past socle"};
            ++runs;
        }
    }
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << runs << " forms across d=4..7, " << dt << "s";
    if (dt > 120.0) return {false, os.str() + " exceeds the 120s budget"};
    return {true, os.str()};
}

// 2. Macaulay pairings at full rank: every complementary degree of the
//    binary ring, and the cover ring at a in {d-3, d}.
Outcome criterion_macaulay() {
    Rng master(20260802);
    std::size_t checked = 0;
    for (unsigned d = 4; d <= 7; ++d) {
        for (int i = 0; i < 5; ++i) {
            auto field = fresh_field(master);
            Rng rng(master.next());
            auto f = smooth_form(field, d, rng);
            auto plane = ring::JacobianRing<PrimeField>::binary(field, f);
            for (unsigned a = 0; a <= 2 * d - 4; ++a) {
                auto m = ring::macaulay_pairing_matrix(field, plane, a);
                if (la::rank(field, m) != m.rows || m.rows != m.cols)
                    return {false, "binary pairing degenerate at d=" + std::to_string(d) +
                                       ", a=" + std::to_string(a)};
                ++checked;
            }
            auto cover = ring::JacobianRing<PrimeField>::cover(field, f);
            for (unsigned a : {d - 3, d}) {
                auto m = ring::macaulay_pairing_matrix(field, cover, a);
                if (la::rank(field, m) != std::min(m.rows, m.cols))
                    return {false, "cover pairing degenerate at d=" + std::to_string(d) +
                                       ", a=" + std::to_string(a)};
                ++checked;
            }
        }
    }
    return {true, std::to_string(checked) + " pairing matrices, all full rank"};
}

// 3. Contraction vanishing on W x K and the perfect W x K1 pairing, with
//    det(lambda) nonzero in every run.
Outcome criterion_lemmas() {
    Rng master(20260803);
    std::size_t runs = 0;
    for (unsigned d = 4; d <= 6; ++d) {
        for (int i = 0; i < 10; ++i) {
            auto field = fresh_field(master);
            Rng rng(master.next());
            auto data = ikeda::build_ikeda_data(field, smooth_form(field, d, rng));
            if (!ikeda::check_lemma_i(field, data).pass)
                return {false, "lemma_i failed at d=" + std::to_string(d)};
            auto lii = ikeda::check_lemma_ii(field, data);
            if (!lii.pass || field.is_zero(lii.det_lambda))
                return {false, "det(lambda) = 0 at d=" + std::to_string(d)};
            ++runs;
        }
    }
    return {true, std::to_string(runs) + " runs, det(lambda) nonzero in each"};
}

// 4. Kernel membership of the test element for d in {5, 6}; the d=6 run
//    (spaces with thousands of columns) must finish inside ten minutes.
Outcome criterion_membership() {
    Rng master(20260804);
    std::ostringstream os;
    for (unsigned d : {5u, 6u}) {
        const auto t0 = Clock::now();
        for (int i = 0; i < 3; ++i) {
            auto field = fresh_field(master);
            Rng rng(master.next());
            auto data = ikeda::build_ikeda_data(field, smooth_form(field, d, rng));
            auto w = ikeda::build_test_element(field, data);
            if (!ikeda::check_kernel_membership(field, data, w))
                return {false, "membership failed at d=" + std::to_string(d)};
        }
        const double dt = seconds_since(t0);
        os << "d=" << d << ": 3 runs in " << dt << "s; ";
        if (d == 6 && dt > 600.0) return {false, os.str() + "exceeds the 600s budget"};
    }
    return {true, os.str()};
}

// 5. Full verification chain certifies 20/20 seeds at each d in {4, 5, 6}.
Outcome criterion_certificates() {
    Rng master(20260805);
    std::size_t certified = 0, total = 0;
    for (unsigned d = 4; d <= 6; ++d) {
        for (int i = 0; i < 20; ++i) {
            auto field = fresh_field(master);
            Rng rng(master.next());
            auto f = smooth_form(field, d, rng);
            auto data = ikeda::build_ikeda_data(field, f);
            auto cert = ikeda::verify_nonvanishing(field, data, "acceptance",
                                                   io::form_digest(field, f));
            ++total;
            if (cert.certified) ++certified;
        }
    }
    std::ostringstream os;
    os << certified << "/" << total << " certified";
    return {certified == total, os.str()};
}

// 6. The distinguished character eigenspaces are lines on both sides.
Outcome criterion_eigenspaces() {
    Rng master(20260806);
    std::size_t runs = 0;
    for (unsigned d = 4; d <= 6; ++d) {
        for (int i = 0; i < 5; ++i) {
            auto field = fresh_field(master);
            Rng rng(master.next());
            auto cover = ring::JacobianRing<PrimeField>::cover(field, smooth_form(field, d, rng));
            auto h10 = ivhs::piece_weights(cover.piece(d - 3), d);
            auto h01 = ivhs::piece_weights(cover.piece(2 * d - 3), d);
            if (ivhs::eigenspace_dim(h10, (d - 2) % d) != 1)
                return {false, "H10 eigenspace not a line at d=" + std::to_string(d)};
            if (ivhs::eigenspace_dim(h01, 2 % d) != 1)
                return {false, "H01 eigenspace not a line at d=" + std::to_string(d)};
            ++runs;
        }
    }
    return {true, std::to_string(runs) + " runs, both eigenspaces one-dimensional"};
}

// 7. Koszul strand at the quartic: kernel equals wedge image (3 = 3) for
//    ten random smooth quartics.
Outcome criterion_koszul() {
    Rng master(20260807);
    for (int i = 0; i < 10; ++i) {
        auto field = fresh_field(master);
        Rng rng(master.next());
        auto tab = koszul::canonical_mult_table_plane(field, smooth_form(field, 4, rng));
        auto rep = koszul::koszul_kernel_report(field, tab, 1);
        if (!(rep.equal && rep.dim_kernel == 3 && rep.dim_wedge_image == 3))
            return {false, "kernel/wedge mismatch on quartic " + std::to_string(i)};
    }
    return {true, "10 quartics, kernel = wedge image of dimension 3"};
}

// 8. normal_form against an independent linear-solve membership oracle,
//    plus the exhaustive comultiplication/wedge duality identity.
Outcome criterion_oracles() {
    Rng master(20260808);
    std::size_t checked = 0;
    for (unsigned d : {4u, 5u}) {
        auto field = fresh_field(master);
        Rng rng(master.next());
        auto f = smooth_form(field, d, rng);
        auto cover = ring::JacobianRing<PrimeField>::cover(field, f);
        for (unsigned k = 1; k <= 2 * d - 3; ++k) {
            const auto& piece = cover.piece(k);
            la::DenseMatrix<PrimeField> slice =
                la::DenseMatrix<PrimeField>::zero(field, 0, piece.ambient());
            for (const auto& gen : cover.generators()) {
                if (gen.degree > k) continue;
                for (std::size_t m = 0; m < ternary_count(k - gen.degree); ++m)
                    slice.append_row(ring::poly_mul(field,
                                                    ring::mono_poly(field, 3, k - gen.degree, m),
                                                    gen)
                                         .coeffs);
            }
            auto slice_t = la::transpose(field, slice);
            for (int t = 0; t < 50; ++t) {
                std::vector<PrimeField::Elem> poly(piece.ambient());
                for (auto& x : poly) x = field.random(rng);
                auto nf = piece.normal_form(field, poly);
                auto lifted = piece.lift(field, nf);
                auto residue = poly;
                for (std::size_t i = 0; i < residue.size(); ++i)
                    residue[i] = field.sub(residue[i], lifted.coeffs[i]);
                if (!la::solve(field, slice_t, residue).has_value())
                    return {false, "normal_form residue not in the ideal slice at d=" +
                                       std::to_string(d) + ", k=" + std::to_string(k)};
                ++checked;
            }
        }
    }

    // duality <comult(e_A), e_i (x) e_B> = <e_A, e_i /\ e_B>, exhaustively
    auto field = PrimeField(1000003);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t s = 1; s <= std::min<std::size_t>(3, n); ++s) {
            auto cm = ivhs::comult_matrix(field, n, s);
            const std::size_t rest = binom(n, s - 1);
            for (std::size_t ra = 0; ra < cm.cols; ++ra)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t rb = 0; rb < rest; ++rb) {
                        Combo b = combo_unrank(n, s - 1, rb);
                        auto expected = field.zero();
                        if (auto pos = combo_insert(b, i)) {
                            if (combo_rank(n, b) == ra)
                                expected = (*pos % 2 == 0) ? field.one()
                                                           : field.neg(field.one());
                        }
                        if (!field.eq(cm.at(i * rest + rb, ra), expected))
                            return {false, "comultiplication/wedge duality broken at n=" +
                                               std::to_string(n) + ", s=" + std::to_string(s)};
                    }
        }
    }
    return {true, std::to_string(checked) + " membership checks; duality exhaustive to n=4, s=3"};
}

// 9. Rationals and F_p agree on every dimension and verdict for integer
//    coefficient forms.
Outcome criterion_field_crosscheck() {
    RationalField rat;
    Rng master(20260809);
    std::size_t runs = 0;
    for (unsigned d : {4u, 5u}) {
        for (int i = 0; i < 3; ++i) {
            auto field = fresh_field(master);
            Rng rng(master.next());
            // integer coefficients, smooth over Q and (checked) over F_p
            ring::BinaryForm<RationalField> fq{0, {}};
            ring::BinaryForm<PrimeField> fp{0, {}};
            for (;;) {
                fq = smooth_form(rat, d, rng);
                fp = ring::BinaryForm<PrimeField>{d, {}};
                for (const auto& c : fq.coeffs)
                    fp.coeffs.push_back(
                        field.from_int(numerator(c).convert_to<std::int64_t>()));
                if (ring::smoothness_check_binary(field, fp)) break;
            }

            auto plane_q = ring::JacobianRing<RationalField>::binary(rat, fq);
            auto plane_p = ring::JacobianRing<PrimeField>::binary(field, fp);
            auto cover_q = ring::JacobianRing<RationalField>::cover(rat, fq);
            auto cover_p = ring::JacobianRing<PrimeField>::cover(field, fp);
            for (unsigned k = 0; k <= 2 * d - 3; ++k)
                if (plane_q.piece(k).dim() != plane_p.piece(k).dim())
                    return {false, "plane dims differ at d=" + std::to_string(d)};
            for (unsigned k = 0; k <= 3 * d - 5; ++k)
                if (cover_q.piece(k).dim() != cover_p.piece(k).dim())
                    return {false, "cover dims differ at d=" + std::to_string(d)};

            auto cq = ikeda::verify_nonvanishing(rat, ikeda::build_ikeda_data(rat, fq), "q", "x");
            auto cp = ikeda::verify_nonvanishing(field, ikeda::build_ikeda_data(field, fp),
                                                 "p", "x");
            if (cq.certified != cp.certified || !cq.certified)
                return {false, "verdicts differ at d=" + std::to_string(d)};
            if (cq.eig_h10_dim != cp.eig_h10_dim || cq.eig_h01_dim != cp.eig_h01_dim ||
                cq.annihilator_dim != cp.annihilator_dim)
                return {false, "certificate dims differ at d=" + std::to_string(d)};

            auto rep_q = koszul::koszul_kernel_report(
                rat, koszul::canonical_mult_table_plane(rat, fq), 1);
            auto rep_p = koszul::koszul_kernel_report(
                field, koszul::canonical_mult_table_plane(field, fp), 1);
            if (rep_q.dim_kernel != rep_p.dim_kernel ||
                rep_q.dim_wedge_image != rep_p.dim_wedge_image || rep_q.equal != rep_p.equal)
                return {false, "koszul dims differ at d=" + std::to_string(d)};
            ++runs;
        }
    }
    return {true, std::to_string(runs) + " forms agree across both fields"};
}

// 10. Two CLI runs with the same config and seed write byte-identical
//     reports.
Outcome criterion_determinism(const std::string& ikv_bin) {
    namespace fs = std::filesystem;
    if (ikv_bin.empty()) return {false, "no ikv binary path supplied"};
    const fs::path dir =
        fs::temp_directory_path() / ("ikv_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto read_all = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    Outcome out{true, ""};
    for (const std::string& sub : {std::string("ikeda-verify --d 5 --random --seed 911"),
                                   std::string("koszul --d 4 --random --seed 911 --k 1")}) {
        const fs::path a = dir / "a.json", b = dir / "b.json";
        const std::string base = "'" + ikv_bin + "' " + sub + " --report ";
        if (std::system((base + "'" + a.string() + "' > /dev/null").c_str()) != 0 ||
            std::system((base + "'" + b.string() + "' > /dev/null").c_str()) != 0) {
            out = {false, "CLI run failed for: " + sub};
            break;
        }
        const auto ta = read_all(a), tb = read_all(b);
        if (ta.empty() || ta != tb) {
            out = {false, "reports differ for: " + sub};
            break;
        }
    }
    fs::remove_all(dir);
    if (out.pass) out.detail = "byte-identical reports for two commands";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    const std::string ikv_bin = argc > 1 ? argv[1] : "";
    int failures = 0;
    int index = 0;
    auto report = [&](const char* name, const Outcome& o) {
        ++index;
        std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", index, name,
                    o.detail.c_str());
        if (!o.pass) ++failures;
    };
    report("graded dimensions of both rings", criterion_hilbert());
    report("macaulay pairings nondegenerate", criterion_macaulay());
    report("contraction lemmas and det(lambda)", criterion_lemmas());
    report("kernel membership of the test element", criterion_membership());
    report("certificates at d=4,5,6", criterion_certificates());
    report("distinguished eigenspaces are lines", criterion_eigenspaces());
    report("koszul kernel equals wedge image on quartics", criterion_koszul());
    report("independent oracles agree", criterion_oracles());
    report("field cross-check", criterion_field_crosscheck());
    report("deterministic reports", criterion_determinism(ikv_bin));
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
