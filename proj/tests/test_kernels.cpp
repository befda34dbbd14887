#include "dtfuse/error.hpp"
#include "dtfuse/filters.hpp"
#include "dtfuse/kernels.hpp"
#include "dtfuse/rng.hpp"

#include <doctest.h>
#include <omp.h>

using namespace dtfuse;
namespace k = dtfuse::kernels;

namespace {

Plane random_plane(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Plane p(rows, cols);
  for (double& v : p.data) v = rng.uniform(-100.0, 100.0);
  return p;
}

struct ThreadCount {
  explicit ThreadCount(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("reflect_index is half-sample symmetric") {
  CHECK(k::reflect_index(-1, 5) == 0);
  CHECK(k::reflect_index(-2, 5) == 1);
  CHECK(k::reflect_index(0, 5) == 0);
  CHECK(k::reflect_index(4, 5) == 4);
  CHECK(k::reflect_index(5, 5) == 4);
  CHECK(k::reflect_index(6, 5) == 3);
  CHECK(k::reflect_index(10, 5) == 0);   // one full period
  CHECK(k::reflect_index(-12, 5) == 1);  // more than one period below zero
  CHECK(k::reflect_index(3, 1) == 0);
}

TEST_CASE("parallel kernels are bit-identical to the serial reference") {
  for (int threads : {1, 3, 4}) {
    ThreadCount tc(threads);
    for (std::size_t rows : {4u, 8u, 12u, 36u, 64u}) {
      for (std::size_t cols : {1u, 7u, 32u}) {
        CAPTURE(threads);
        CAPTURE(rows);
        CAPTURE(cols);
        const Plane x = random_plane(rows, cols, rows * 131 + cols);
        CHECK(k::colfilter(x, filters::h0o) == k::serial::colfilter(x, filters::h0o));
        CHECK(k::colfilter(x, filters::h1o) == k::serial::colfilter(x, filters::h1o));
        CHECK(k::coldfilt(x, filters::h0b, filters::h0a) == k::serial::coldfilt(x, filters::h0b, filters::h0a));
        CHECK(k::coldfilt(x, filters::h1b, filters::h1a) == k::serial::coldfilt(x, filters::h1b, filters::h1a));
        CHECK(k::colifilt(x, filters::g0b, filters::g0a) == k::serial::colifilt(x, filters::g0b, filters::g0a));
        CHECK(k::colifilt(x, filters::g1b, filters::g1a) == k::serial::colifilt(x, filters::g1b, filters::g1a));
        CHECK(k::transpose(x) == k::serial::transpose(x));
      }
    }
  }
}

TEST_CASE("kernel output shapes") {
  const Plane x = random_plane(16, 5, 1);
  CHECK(k::colfilter(x, filters::h0o).rows == 16);
  CHECK(k::coldfilt(x, filters::h0b, filters::h0a).rows == 8);
  CHECK(k::colifilt(x, filters::g0b, filters::g0a).rows == 32);
  const Plane t = k::transpose(x);
  CHECK(t.rows == 5);
  CHECK(t.cols == 16);
  CHECK(t(3, 11) == x(11, 3));
}

TEST_CASE("lowpass filtering preserves a constant column") {
  const Plane x(12, 3, 7.0);
  for (double v : k::colfilter(x, filters::h0o).data) CHECK(v == doctest::Approx(7.0).epsilon(1e-14));
  for (double v : k::colfilter(x, filters::h1o).data) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("kernel preconditions") {
  const Plane x = random_plane(6, 2, 3);
  CHECK_THROWS_AS(k::colfilter(x, filters::h0a), InvalidArgument);              // even length
  CHECK_THROWS_AS(k::coldfilt(x, filters::h0b, filters::h0a), InvalidArgument);  // 6 rows
  CHECK_THROWS_AS(k::colifilt(random_plane(5, 2, 3), filters::g0b, filters::g0a), InvalidArgument);
  CHECK_THROWS_AS(k::serial::coldfilt(x, filters::h0b, filters::h0a), InvalidArgument);
}
