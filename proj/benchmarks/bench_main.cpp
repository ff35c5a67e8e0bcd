#include "irmlab/invariance.hpp"
#include "irmlab/irm.hpp"
#include "irmlab/verify.hpp"

#include <benchmark/benchmark.h>

using namespace irmlab;

namespace {

Instance bench_instance(std::size_t n1, std::size_t n2) {
    Instance inst;
    inst.task = TaskKind::regression;
    for (std::size_t i = 0; i < n1; ++i) inst.x1_points.push_back({Rational(static_cast<int>(i))});
    for (std::size_t i = 0; i < n2; ++i) inst.x2_points.push_back({Rational(static_cast<int>(i))});
    inst.y_points = {{Rational(0)}, {Rational(1)}};
    inst.h_size = static_cast<int>(n1);
    for (std::size_t i = 0; i < n1; ++i) {
        inst.kernel.table.push_back(
            {Rational(static_cast<int>(i) + 1, 2 * static_cast<int>(n1)),
             Rational(2 * static_cast<int>(n1) - static_cast<int>(i) - 1,
                      2 * static_cast<int>(n1))});
    }
    return inst;
}

std::vector<Domain> bench_domains(const Instance& inst) {
    std::vector<Domain> out;
    out.push_back(uniform_domain(inst));
    Domain skew = uniform_domain(inst);
    Rational total = 0;
    for (std::size_t i = 0; i < inst.x1_size(); ++i) {
        skew.x1_marginal[i] = Rational(static_cast<int>(i) + 1);
        total += skew.x1_marginal[i];
    }
    for (auto& m : skew.x1_marginal) m /= total;
    for (std::size_t i1 = 0; i1 < inst.x1_size(); ++i1) {
        for (std::size_t j = 0; j < inst.y_size(); ++j) {
            RationalVec row(inst.x2_size(), Rational(0));
            row[j % inst.x2_size()] = 1;
            skew.x2_given_x1y[i1][j] = std::move(row);
        }
    }
    out.push_back(std::move(skew));
    return out;
}

void BM_joint_distribution(benchmark::State& state) {
    const Instance inst = bench_instance(3, 3);
    const Domain domain = uniform_domain(inst);
    for (auto _ : state) {
        benchmark::DoNotOptimize(joint_distribution(inst, domain));
    }
}
BENCHMARK(BM_joint_distribution);

void BM_ood_risk_exact(benchmark::State& state) {
    const Instance inst = bench_instance(3, 3);
    const Predictor bayes = bayes_ood_predictor(inst, LossKind::least_square);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ood_risk(inst, bayes, LossKind::least_square));
    }
}
BENCHMARK(BM_ood_risk_exact);

void BM_enumerate_invariant_partitions(benchmark::State& state) {
    const std::size_t n2 = static_cast<std::size_t>(state.range(0));
    const Instance inst = bench_instance(2, n2);
    const auto domains = bench_domains(inst);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            enumerate_invariant_partitions(inst, domains, inst.h_size));
    }
}
BENCHMARK(BM_enumerate_invariant_partitions)->Arg(2)->Arg(3)->Arg(4);

void BM_irm_solve(benchmark::State& state) {
    const Instance inst = bench_instance(2, 2);
    const auto domains = bench_domains(inst);
    for (auto _ : state) {
        benchmark::DoNotOptimize(irm_solve(inst, domains, LossKind::least_square));
    }
}
BENCHMARK(BM_irm_solve);

void BM_verify_theorem(benchmark::State& state) {
    const Instance inst = bench_instance(2, 2);
    const auto domains = bench_domains(inst);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_theorem(inst, domains, LossKind::least_square));
    }
}
BENCHMARK(BM_verify_theorem);

} // namespace

BENCHMARK_MAIN();
