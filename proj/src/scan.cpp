#include "randsurf/scan.hpp"

#include "randsurf/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

namespace randsurf {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::int64_t p, std::int64_t index) noexcept
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(p));
    return splitmix64(h ^ static_cast<std::uint64_t>(index));
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn)
{
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        while (!failed.load()) {
            std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed = true;
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run);
        for (auto& t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);
}

Rational median(std::vector<Rational> values)
{
    if (values.empty())
        throw PreconditionError("median of an empty list");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1)
        return values[n / 2];
    Rational m = (values[n / 2 - 1] + values[n / 2]) / 2;
    return m;
}

ScanResult convergence_scan(const Arrangement& a, std::span<const std::int64_t> primes,
                            const ScanOptions& opts)
{
    if (opts.samples_per_prime < 1)
        throw PreconditionError("samples per prime must be at least 1");
    const ResolvedArrangement ra = resolve(a);
    ScanResult out;
    out.log = log_chern_resolved(ra);
    if (out.log.c2bar == 0)
        throw PreconditionError("log c2 is zero; the ratio is undefined");
    out.log_ratio = *out.log.ratio();

    std::vector<PrimeModulus> moduli;
    for (std::int64_t p : primes)
        moduli.emplace_back(p);

    // Samplers are built once per prime and shared read-only.
    std::vector<std::unique_ptr<SolutionSampler>> samplers(moduli.size());
    std::vector<std::string> skip_reason(moduli.size());
    parallel_for(moduli.size(), opts.workers, [&](std::size_t k) {
        auto s = std::make_unique<SolutionSampler>(system_for(a, moduli[k]));
        if (s->count() == 0)
            skip_reason[k] = "no positive solutions";
        else
            samplers[k] = std::move(s);
    });

    const auto per = static_cast<std::size_t>(opts.samples_per_prime);
    std::vector<std::optional<ScanSample>> slots(moduli.size() * per);
    parallel_for(slots.size(), opts.workers, [&](std::size_t task) {
        const std::size_t k = task / per;
        const auto index = static_cast<std::int64_t>(task % per);
        if (!samplers[k])
            return;
        const std::int64_t p = moduli[k].value();
        ScanSample s;
        s.p = p;
        s.index = index;
        s.seed = derive_seed(opts.seed, p, index);
        Rng rng(s.seed);
        try {
            GoodSample g = sample_good(*samplers[k], a, ra, rng, opts.max_tries, opts.farey);
            s.solution = std::move(g.solution);
            s.tries = g.tries;
            s.report = report(CoverSpec{moduli[k], ra, std::move(g.assignment), opts.farey});
        } catch (const ExhaustedTries&) {
            return;
        }
        slots[task] = std::move(s);
    });

    for (std::size_t k = 0; k < moduli.size(); ++k) {
        const std::int64_t p = moduli[k].value();
        if (!samplers[k]) {
            out.skipped.push_back({p, skip_reason[k]});
            continue;
        }
        std::vector<ScanSample> got;
        std::int64_t exhausted = 0;
        for (std::size_t i = 0; i < per; ++i) {
            auto& slot = slots[k * per + i];
            if (slot)
                got.push_back(std::move(*slot));
            else
                ++exhausted;
        }
        if (exhausted > 0) {
            out.skipped.push_back(
                {p, fmt::format("{} of {} samples exhausted {} tries", exhausted, per, opts.max_tries)});
            continue;
        }
        std::vector<Rational> ratios;
        for (const ScanSample& s : got) {
            if (!s.report.ratio_c)
                throw NonIntegralError("sampled cover has c2 = 0");
            ratios.push_back(*s.report.ratio_c);
        }
        ScanRow row;
        row.p = p;
        row.samples = static_cast<std::int64_t>(ratios.size());
        row.min = *std::min_element(ratios.begin(), ratios.end());
        row.max = *std::max_element(ratios.begin(), ratios.end());
        row.median = median(ratios);
        row.deviation = abs(row.median - out.log_ratio);
        out.rows.push_back(row);
        for (ScanSample& s : got)
            out.samples.push_back(std::move(s));
    }
    return out;
}

} // namespace randsurf
