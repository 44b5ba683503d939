#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tamecft/ff.hpp"

using namespace tamecft;

namespace {

std::vector<FieldSpec> small_fields() {
  std::vector<FieldSpec> out;
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 3}, {5, 2}, {3, 3}, {7, 2}, {2, 4}, {3, 4}}) {
    out.push_back(FieldSpec::make(p, e));
  }
  return out;
}

}  // namespace

TEST(FiniteField, Examples) {
  const FieldSpec f5 = FieldSpec::make(5);
  EXPECT_EQ((f5.from_int(2) * f5.from_int(3)).to_string(), "1");
  EXPECT_EQ(f5.from_int(4).inv(), f5.from_int(4));
  EXPECT_EQ(f5.dlog(f5.from_int(4), f5.from_int(2)), 2u);
  EXPECT_EQ(f5.dlog(f5.one(), f5.from_int(2)), 0u);
  const FieldSpec f7 = FieldSpec::make(7);
  EXPECT_EQ(f7.dlog(f7.from_int(6), f7.from_int(3)), 3u);

  const FieldSpec f9 = FieldSpec::make(3, 2);
  EXPECT_EQ(f9.modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  const FqElt w = f9.from_coeffs({0, 1});
  EXPECT_EQ(w * w, f9.from_int(2));
}

TEST(FiniteField, DefaultModuli) {
  EXPECT_EQ(FieldSpec::make(5, 2).modulus(), (std::vector<std::uint32_t>{2, 0, 1}));
  EXPECT_EQ(FieldSpec::make(2, 2).modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(FieldSpec::make(2, 3).modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  EXPECT_EQ(FieldSpec::make(5, 1).primitive_element().to_string(), "2");
  EXPECT_EQ(FieldSpec::make(7, 1).primitive_element().to_string(), "3");
  for (const auto& f : small_fields()) EXPECT_TRUE(is_irreducible_mod_p(f.modulus(), f.p())) << f.to_string();
}

TEST(FiniteField, ParseAndFormat) {
  const FieldSpec f9 = FieldSpec::parse("p=3,e=2,mod=1,0,1");
  EXPECT_EQ(f9, FieldSpec::make(3, 2));
  EXPECT_EQ(FieldSpec::parse(f9.to_string()), f9);
  for (std::uint32_t i = 0; i < f9.q(); ++i) {
    const FqElt a = f9.element(i);
    EXPECT_EQ(f9.parse_element(a.to_string()), a);
    EXPECT_EQ(f9.parse_element("(" + a.to_string() + ")"), a);
  }
  EXPECT_THROW(FieldSpec::parse("p=4,e=1"), Error);
  EXPECT_THROW(FieldSpec::parse("p=3,e=2,mod=1,1"), Error);
  EXPECT_THROW(FieldSpec::parse("p=3,e=2,mod=1,0,1,0"), Error);
  EXPECT_THROW(FieldSpec::make(5).parse_element("x"), Error);
  EXPECT_THROW(FieldSpec::make(5).zero().inv(), Error);
}

TEST(FiniteField, FermatExhaustive) {
  for (const auto& f : small_fields()) {
    for (std::uint32_t i = 1; i < f.q(); ++i) {
      EXPECT_TRUE(f.element(i).pow(f.q() - 1).is_one()) << f.to_string() << " " << i;
    }
  }
}

TEST(FiniteField, FieldAxiomsExhaustiveF9) {
  const FieldSpec f = FieldSpec::make(3, 2);
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    for (std::uint32_t j = 0; j < f.q(); ++j) {
      const FqElt a = f.element(i), b = f.element(j);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a + b) - b, a);
      if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
      for (std::uint32_t k = 0; k < f.q(); ++k) {
        const FqElt c = f.element(k);
        EXPECT_EQ(a * (b + c), a * b + a * c);
      }
    }
  }
}

TEST(FiniteField, DlogRoundTrip) {
  std::mt19937_64 rng(7);
  for (const auto& f : small_fields()) {
    const FqElt g = f.primitive_element();
    for (int t = 0; t < 100; ++t) {
      const FqElt a = f.element(1 + rng() % (f.q() - 1));
      EXPECT_EQ(g.pow(static_cast<std::int64_t>(f.dlog(a, g))), a);
    }
  }
  const FieldSpec big = FieldSpec::make(2, 16);
  const FqElt g = big.primitive_element();
  for (int t = 0; t < 20; ++t) {
    const FqElt a = big.element(1 + rng() % (big.q() - 1));
    EXPECT_EQ(g.pow(static_cast<std::int64_t>(big.dlog(a, g))), a);
  }
}

TEST(FiniteField, RootsOfUnity) {
  const FieldSpec f5 = FieldSpec::make(5);
  auto idx = [](const std::vector<FqElt>& v) {
    std::vector<std::string> s;
    for (const auto& e : v) s.push_back(e.to_string());
    return s;
  };
  EXPECT_EQ(idx(f5.roots_of_unity(4)), (std::vector<std::string>{"1", "2", "3", "4"}));
  EXPECT_EQ(idx(f5.roots_of_unity(2)), (std::vector<std::string>{"1", "4"}));
  EXPECT_EQ(idx(FieldSpec::make(7).roots_of_unity(3)), (std::vector<std::string>{"1", "2", "4"}));
  EXPECT_THROW(f5.roots_of_unity(3), Error);
  for (const auto& f : small_fields()) {
    for (std::uint64_t n = 1; n <= f.q() - 1; ++n) {
      if ((f.q() - 1) % n) continue;
      std::set<std::uint32_t> kernel;
      for (std::uint32_t i = 1; i < f.q(); ++i) {
        if (f.element(i).pow(static_cast<std::int64_t>(n)).is_one()) kernel.insert(i);
      }
      std::set<std::uint32_t> mu;
      for (const auto& z : f.roots_of_unity(n)) mu.insert(z.index());
      EXPECT_EQ(mu, kernel) << f.to_string() << " n=" << n;
    }
  }
}

TEST(FiniteField, NthRoots) {
  const FieldSpec f7 = FieldSpec::make(7);
  for (std::uint32_t i = 1; i < 7; ++i) {
    const FqElt a = f7.element(i);
    for (const auto& r : f7.nth_roots(a, 3)) EXPECT_EQ(r.pow(3), a);
    EXPECT_EQ(f7.is_nth_power(a, 3), !f7.nth_roots(a, 3).empty());
  }
  EXPECT_FALSE(FieldSpec::make(5).is_nth_power(FieldSpec::make(5).from_int(2), 2));
}

TEST(FiniteField, NormExamples) {
  const FieldSpec f5 = FieldSpec::make(5);
  const FieldSpec f25 = extension_field(f5, 2);
  const Embedding& emb = *find_embedding(f5, f25);
  const FqElt delta = f25.nth_roots(emb.map(f5.from_int(2)), 2).front();
  EXPECT_EQ(delta * delta, emb.map(f5.from_int(2)));
  EXPECT_EQ(norm(delta, f5), f5.from_int(3));
  for (std::uint32_t i = 0; i < 5; ++i) {
    const FqElt a = f5.element(i);
    EXPECT_EQ(norm(emb.map(a), f5), a * a);
    EXPECT_EQ(emb.lift(emb.map(a)), a);
  }
  EXPECT_EQ(norm(f25.one(), f5), f5.one());
  EXPECT_FALSE(emb.in_image(delta));
  EXPECT_THROW(emb.lift(delta), Error);
}

TEST(FiniteField, EmbeddingIsHomomorphism) {
  for (auto [p, e, d] : std::vector<std::array<std::uint32_t, 3>>{{5, 1, 2}, {3, 2, 2}, {2, 2, 2}, {7, 1, 2}, {2, 1, 4}}) {
    const FieldSpec small = FieldSpec::make(p, e);
    const FieldSpec big = extension_field(small, d);
    const Embedding& emb = *find_embedding(small, big);
    for (std::uint32_t i = 0; i < small.q(); ++i) {
      for (std::uint32_t j = 0; j < small.q(); ++j) {
        const FqElt a = small.element(i), b = small.element(j);
        EXPECT_EQ(emb.map(a + b), emb.map(a) + emb.map(b));
        EXPECT_EQ(emb.map(a * b), emb.map(a) * emb.map(b));
      }
    }
  }
}

TEST(FiniteField, NormMultiplicative) {
  std::mt19937_64 rng(11);
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {3, 2}, {7, 1}}) {
    const FieldSpec base = FieldSpec::make(p, e);
    const FieldSpec big = extension_field(base, 2);
    for (int t = 0; t < 100; ++t) {
      const FqElt a = big.element(rng() % big.q()), b = big.element(rng() % big.q());
      EXPECT_EQ(norm(a * b, base), norm(a, base) * norm(b, base));
    }
  }
}

TEST(FiniteField, PowerMapMatchesNormThenPower) {
  for (auto [p, e, d] : std::vector<std::array<std::uint32_t, 3>>{{5, 1, 2}, {3, 2, 2}, {7, 1, 2}, {3, 1, 2}, {5, 2, 2}}) {
    const FieldSpec base = FieldSpec::make(p, e);
    const FieldSpec big = extension_field(base, d);
    ASSERT_LE(big.q(), 625u);
    const Embedding& emb = *find_embedding(base, big);
    for (std::uint64_t n = 1; n < base.q(); ++n) {
      if ((base.q() - 1) % n) continue;
      for (std::uint32_t i = 1; i < big.q(); ++i) {
        const FqElt z = big.element(i);
        const FqElt lhs = z.pow(static_cast<std::int64_t>((big.q() - 1) / n));
        const FqElt rhs = norm(z, base).pow(static_cast<std::int64_t>((base.q() - 1) / n));
        ASSERT_EQ(lhs, emb.map(rhs)) << big.to_string() << " n=" << n << " z=" << z.to_string();
      }
    }
  }
}

TEST(FiniteField, Errors) {
  EXPECT_THROW(FieldSpec::make(6), Error);
  EXPECT_THROW(FieldSpec::make(2, 21), Error);
  const FieldSpec f5 = FieldSpec::make(5), f7 = FieldSpec::make(7);
  EXPECT_THROW(f5.one() + f7.one(), Error);
  EXPECT_THROW(f5.dlog(f5.one(), f5.from_int(4)), Error);
  try {
    f5.zero().inv();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAUnit);
  }
}
