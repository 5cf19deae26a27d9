#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "qdp/codes.hpp"

using namespace qdp;

TEST_CASE("random codes carry consistent dual machinery") {
    const FieldSpec f2 = make_field(2, 1);
    const LinearCode code = random_code(f2, 4, 2, 7);
    CHECK((code.codewords() == 2 || code.codewords() == 4));
    CHECK(code.codewords() * code.dual_size() == 16);

    // Every row of H orthogonal to every row of the basis.
    for (int i = 0; i < code.rank; ++i)
        for (int j = 0; j < code.n - code.rank; ++j) {
            int acc = 0;
            for (int l = 0; l < code.n; ++l)
                acc = f2.add(acc, f2.mul(code.basis(i, l), code.H(j, l)));
            CHECK(acc == 0);
        }
}

TEST_CASE("degenerate zero generator") {
    const FieldSpec f2 = make_field(2, 1);
    const LinearCode code = code_from_generator(f2, IMat::Zero(2, 3));
    CHECK(code.rank == 0);
    CHECK(code.codewords() == 1);
    CHECK(code.dual_size() == 8);  // C⊥ = F_2³
}

TEST_CASE("strict mode yields full rank") {
    const FieldSpec f3 = make_field(3, 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(random_code(f3, 5, 3, seed, /*strict=*/true).rank == 3);
}

TEST_CASE("exhaustive rank census at n=3 k=1") {
    const FieldSpec f2 = make_field(2, 1);
    int nontrivial = 0;
    for (int bits = 0; bits < 8; ++bits) {
        IMat G(1, 3);
        for (int j = 0; j < 3; ++j) G(0, j) = (bits >> j) & 1;
        if (code_from_generator(f2, G).codewords() == 2) ++nontrivial;
    }
    CHECK(nontrivial == 7);
}

TEST_CASE("dual of the full and trivial codes") {
    const FieldSpec f2 = make_field(2, 1);
    IMat G(2, 2);
    G << 1, 0, 0, 1;  // C = F_2²
    const LinearCode full = code_from_generator(f2, G);
    const LinearCode d = dual(full);
    CHECK(d.codewords() == 1);  // {00}

    IMat rep(1, 2);
    rep << 1, 1;  // C = {00, 11} is self dual at length 2
    const LinearCode r = code_from_generator(f2, rep);
    const LinearCode rd = dual(r);
    CHECK(rd.codewords() == 2);
    CHECK(rd.basis == r.basis);
}

TEST_CASE("dual dimension over F_3") {
    const FieldSpec f3 = make_field(3, 1);
    const LinearCode code = random_code(f3, 4, 2, 11, /*strict=*/true);
    CHECK(dual(code).codewords() == 9);
    // dual(dual(C)) has the same codeword set.
    CHECK(dual(dual(code)).basis == code.basis);
}

TEST_CASE("coset representatives and enumeration") {
    const FieldSpec f2 = make_field(2, 1);
    IMat G(1, 2);
    G << 1, 1;
    const LinearCode code = code_from_generator(f2, G);
    // Right-inverse rule: syndrome 1 gets (1,0).
    const IRow u1 = coset_representative(code, 1);
    CHECK(u1[0] == 1);
    CHECK(u1[1] == 0);
    CHECK(!(coset_representative(code, 0).array() != 0).any());
    CHECK_THROWS_AS(coset_representative(code, 2), std::invalid_argument);

    for (index_t s = 0; s < code.num_syndromes(); ++s)
        for (const IRow& y : enumerate_coset(code, s))
            CHECK(code.syndrome_index(y) == s);
}

TEST_CASE("cosets partition the whole space") {
    const FieldSpec f3 = make_field(3, 1);
    const LinearCode code = random_code(f3, 4, 2, 5);
    std::set<index_t> seen;
    for (index_t s = 0; s < code.num_syndromes(); ++s) {
        const auto coset = enumerate_coset(code, s);
        CHECK(coset.size() == code.dual_size());
        for (const IRow& y : coset) seen.insert(index_of(y, 3));
    }
    CHECK(seen.size() == ipow(3, 4));
}

TEST_CASE("minimum weight search") {
    const FieldSpec f2 = make_field(2, 1);
    IMat G(1, 2);
    G << 1, 1;
    const LinearCode dual_code = dual(code_from_generator(f2, G));
    auto hamming = [](const IRow& y) {
        double w = 0;
        for (int i = 0; i < y.size(); ++i) w += y[i] != 0 ? 1 : 0;
        return w;
    };
    const auto [word, w] = min_weight_codeword(dual_code, hamming);
    CHECK(w == 2.0);
    CHECK(word[0] == 1);
    CHECK(word[1] == 1);

    // Weight ≡ 0 picks the lexicographically first nonzero codeword.
    const LinearCode c2 = random_code(f2, 5, 2, 9, /*strict=*/true);
    const auto [lex, lw] = min_weight_codeword(c2, [](const IRow&) { return 0.0; });
    CHECK(lw == 0.0);
    bool is_first = false;
    for (const IRow& cand : enumerate_codewords(c2)) {
        if (!(cand.array() != 0).any()) continue;
        is_first = cand == lex;
        break;
    }
    // Lexicographic order of entries, not of message indices.
    std::vector<IRow> nonzero;
    for (const IRow& cand : enumerate_codewords(c2))
        if ((cand.array() != 0).any()) nonzero.push_back(cand);
    IRow smallest = nonzero[0];
    for (const IRow& cand : nonzero)
        if (std::lexicographical_compare(cand.begin(), cand.end(), smallest.begin(),
                                         smallest.end()))
            smallest = cand;
    CHECK(lex == smallest);

    const LinearCode trivial = code_from_generator(f2, IMat::Zero(1, 3));
    CHECK_THROWS_AS(min_weight_codeword(trivial, hamming), std::invalid_argument);
}

TEST_CASE("rank-weight minimum matches exhaustive scan") {
    const FieldSpec f2 = make_field(2, 1);
    const LinearCode code = random_code(f2, 4, 2, 13, /*strict=*/true);
    const LinearCode dc = dual(code);
    auto rank_w = [&](const IRow& y) {
        return static_cast<double>(rank_weight(f2, y, 2, 2));
    };
    const auto [word, w] = min_weight_codeword(dc, rank_w);
    double best = 1e9;
    for (const IRow& y : enumerate_codewords(dc)) {
        if (!(y.array() != 0).any()) continue;
        best = std::min(best, rank_w(y));
    }
    CHECK(w == best);
    CHECK(rank_w(word) == w);
}

TEST_CASE("json round trip") {
    const FieldSpec f3 = make_field(3, 1);
    const LinearCode code = random_code(f3, 5, 2, 21);
    const std::string j = code_to_json(code);
    const FieldSpec* f = nullptr;
    const LinearCode back = code_from_json(j, &f);
    CHECK(f->q == 3);
    CHECK(back.G == code.G);
    CHECK(back.basis == code.basis);
    CHECK(back.seed == code.seed);
}
