#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "teichcalc/iet.hpp"

using namespace teich;

namespace {

Origami four_square() { return build_origami({1, 2, 3, 0}, {1, 0, 3, 2}); }

// Continued-fraction oracle for the two-interval exchange with lengths
// (lA, lB) and swapped bottom order: induction is subtractive Euclid on the
// pair, so the winner-type runs are the partial quotients of the longer over
// the shorter, with the final run shortened by one (equal lengths stop the
// induction with a connection).
std::vector<char> euclid_type_oracle(Rational lA, Rational lB) {
    std::vector<char> types;
    for (;;) {
        if (lA == lB) break;
        if (lB > lA) {
            lB -= lA;
            types.push_back('t');
        } else {
            lA -= lB;
            types.push_back('b');
        }
    }
    return types;
}

IET two_iet(const Rational& lA, const Rational& lB) {
    return build_iet({"A", "B"}, {lA, lB}, {0, 1}, {1, 0});
}

} // namespace

TEST_CASE("iet construction validation") {
    REQUIRE_THROWS_AS(build_iet({}, {}, {}, {}), InputError);
    REQUIRE_THROWS_AS(build_iet({"A", "B"}, {Rational(1), Rational(0)}, {0, 1}, {1, 0}),
                      InputError); // nonpositive length
    REQUIRE_THROWS_AS(build_iet({"A", "A"}, {Rational(1), Rational(1)}, {0, 1}, {1, 0}),
                      InputError); // duplicate label
    REQUIRE_THROWS_AS(build_iet({"A", "B"}, {Rational(1), Rational(1)}, {0, 0}, {1, 0}),
                      InputError); // top not a permutation
    IET iet = iet_from_perm({Rational(1, 2), Rational(1, 3)}, {1, 0});
    REQUIRE(iet.d() == 2);
    REQUIRE(iet.total_length() == Rational(5, 6));
    // Label order is preserved by the duplicate check.
    REQUIRE(build_iet({"z", "a"}, {Rational(1), Rational(1)}, {0, 1}, {1, 0}).labels ==
            std::vector<std::string>{"z", "a"});
}

TEST_CASE("single rauzy step") {
    IET iet = two_iet(Rational(2), Rational(5));
    RauzyStep st = rauzy_step(iet);
    REQUIRE_FALSE(st.connection);
    REQUIRE(st.type == 't'); // last top interval B is longer
    REQUIRE(st.winner == "B");
    REQUIRE(st.loser == "A");
    REQUIRE(st.next.lengths[1] == Rational(3));
    REQUIRE(st.next.lengths[0] == Rational(2));
    // d = 2 combinatorics are invariant under induction.
    REQUIRE(st.next.top == iet.top);
    REQUIRE(st.next.bottom == iet.bottom);
}

TEST_CASE("connection certificate on equal last intervals") {
    IET iet = two_iet(Rational(3), Rational(3));
    RauzyStep st = rauzy_step(iet);
    REQUIRE(st.connection);
    REQUIRE(st.cert.length == Rational(3));
    REQUIRE(st.cert.top_label == "B");
    REQUIRE(st.cert.bottom_label == "A");
    // Reducible data (same last label top and bottom) is rejected.
    REQUIRE_THROWS_AS(rauzy_step(build_iet({"A", "B"}, {Rational(1), Rational(1)},
                                           {0, 1}, {0, 1})),
                      InputError);
}

TEST_CASE("rauzy orbit matches the euclid oracle") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(1, 60);
    for (int it = 0; it < 40; ++it) {
        Rational lA(num(rng)), lB(num(rng));
        IET iet = two_iet(lA, lB);
        auto expect = euclid_type_oracle(lA, lB);
        RauzyOrbit orbit = rauzy_orbit(iet, 1000);
        REQUIRE(orbit.connection.has_value()); // rational data always terminates
        REQUIRE(orbit.types == expect);
    }
}

TEST_CASE("fibonacci lengths alternate types") {
    // F_9 / F_10 = 34/55: continued fraction all ones, so types alternate.
    IET iet = two_iet(Rational(34), Rational(55));
    RauzyOrbit orbit = rauzy_orbit(iet, 100);
    REQUIRE(orbit.connection.has_value());
    for (std::size_t i = 0; i < orbit.types.size(); ++i)
        REQUIRE(orbit.types[i] == (i % 2 == 0 ? 't' : 'b'));
    REQUIRE(orbit.steps == 8); // sum of partial quotients of 55/34 minus 1
}

TEST_CASE("first return of a vertical direction is the vertical monodromy") {
    Origami o = four_square();
    FirstReturn fr = first_return(o, Scalar(0), Scalar(1));
    REQUIRE(fr.iet.d() == 4); // beta = 0: one full interval per square
    REQUIRE(fr.dec.total_area == Scalar(o.n));
    for (const auto& r : fr.dec.rects) {
        REQUIRE(r.base == Scalar(1));
        REQUIRE(r.target_square == o.v[r.source_square]);
        REQUIRE(r.target_offset == Scalar(0));
    }
}

TEST_CASE("first return with fractional slope splits every edge") {
    Origami o = four_square();
    FirstReturn fr = first_return(o, Scalar(Rational(1, 3)), Scalar(1));
    REQUIRE(fr.iet.d() == 8);
    REQUIRE(fr.iet.total_length() == Rational(4));
    REQUIRE(fr.dec.total_area == Scalar(4));
    // Negative slopes quantize the same way through the floor.
    FirstReturn fn = first_return(o, Scalar(Rational(-5, 3)), Scalar(1));
    REQUIRE(fn.dec.total_area == Scalar(4));
    REQUIRE_THROWS_AS(first_return(o, Scalar(1), Scalar(0)), InputError);
}

TEST_CASE("area conservation for random origami and directions") {
    std::mt19937 rng(17);
    auto random_origami = [&](int n) {
        for (;;) {
            Perm h(n), v(n);
            std::iota(h.begin(), h.end(), 0);
            std::iota(v.begin(), v.end(), 0);
            std::shuffle(h.begin(), h.end(), rng);
            std::shuffle(v.begin(), v.end(), rng);
            try {
                return build_origami(h, v);
            } catch (const InputError&) {
            }
        }
    };
    std::uniform_int_distribution<int> nd(1, 8);
    std::uniform_real_distribution<double> slope(-3.0, 3.0);
    for (int it = 0; it < 50; ++it) {
        Origami o = random_origami(nd(rng));
        FirstReturn fr = first_return(o, Scalar(slope(rng)), Scalar(1));
        REQUIRE(fr.dec.total_area.value() == Catch::Approx((double)o.n).margin(1e-9));
        REQUIRE(fr.iet.total_length() == Rational(o.n));
    }
}

TEST_CASE("direction classification") {
    Origami o = four_square();
    REQUIRE(classify_direction(o, Scalar(1), Scalar(0)) == DirectionClass::periodic);
    REQUIRE(classify_direction(o, Scalar(Rational(2, 7)), Scalar(1)) ==
            DirectionClass::periodic);
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    // The four-square section concatenates four bottom edges; the artificial
    // junctions between them collide with discontinuity orbits after two
    // induction steps, so the classifier stays honest and reports
    // inconclusive rather than certifying minimality.
    REQUIRE(classify_direction(o, Scalar(golden), Scalar(1)) ==
            DirectionClass::inconclusive);
    Origami torus = build_origami({0}, {0});
    REQUIRE(classify_direction(torus, Scalar(golden), Scalar(1)) ==
            DirectionClass::minimal_certified);
}
