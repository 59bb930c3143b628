#include "doctest.h"

#include <atomic>
#include <thread>
#include <vector>

#include "abvp/expr.hpp"
#include "abvp/solver.hpp"

using namespace abvp;

TEST_CASE("one Expr evaluates identically from many threads") {
    Expr e = Expr::parse("sin(t)*exp(u)/(1+u^2)+sqrt(u)", vars_tu);
    const double expected = e.eval(Bindings::at_tu(0.3, 0.7));
    std::atomic<int> mismatches{0};
    std::vector<std::thread> pool;
    for (int k = 0; k < 8; ++k) {
        pool.emplace_back([&]() {
            for (int i = 0; i < 5000; ++i)
                if (e.eval(Bindings::at_tu(0.3, 0.7)) != expected)
                    mismatches.fetch_add(1);
        });
    }
    for (auto& t : pool) t.join();
    CHECK(mismatches.load() == 0);
}

TEST_CASE("independent solves run concurrently and match serial results") {
    ReducedBVP bvp =
        make_interval_bvp(Expr::parse("1", vars_t), Expr::parse("u/(1+u)", vars_tu));
    PicardConfig cfg;
    cfg.grid_n = 513;

    const double serial_a = picard_solve(bvp, 50.0, cfg).sup_norm;
    const double serial_b = picard_solve(bvp, 80.0, cfg).sup_norm;

    double par_a = 0.0, par_b = 0.0;
    std::thread ta([&]() { par_a = picard_solve(bvp, 50.0, cfg).sup_norm; });
    std::thread tb([&]() { par_b = picard_solve(bvp, 80.0, cfg).sup_norm; });
    ta.join();
    tb.join();
    CHECK(par_a == serial_a);
    CHECK(par_b == serial_b);
}
