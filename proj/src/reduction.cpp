#include "gonlab/reduction.hpp"

#include "gonlab/error.hpp"
#include "gonlab/lattice.hpp"

namespace gonlab {

namespace {

struct Prepared {
    LatticeModel model;
    ChipVector chips;
    int base;
};

Prepared prepare(const MetricGraph& g, const Divisor& d, const PointRef& q, std::optional<int> subdivision)
{
    check_divisor(g, d);
    check_point(g, q);
    Divisor base_point{{q, 1}};
    int s = resolve_subdivision(g, {&d, &base_point}, subdivision);
    auto model = LatticeModel::build(g, s);
    auto chips = model.to_chips(d);
    int base = model.index_of(q);
    return {std::move(model), std::move(chips), base};
}

} // namespace

BurnReport burn(const MetricGraph& g, const Divisor& d, const PointRef& q, std::optional<int> subdivision)
{
    if (!d.is_effective_away_from(q))
        throw InvalidDivisor("burning needs a divisor that is effective away from the base point");
    auto [model, chips, base] = prepare(g, d, q, subdivision);

    std::vector<int> order;
    auto burnt = kernels::burn(model, chips, base, &order);

    BurnReport report;
    report.subdivision = model.subdivision();
    for (std::size_t v = 0; v < model.size(); ++v) {
        const auto& p = model.point(int(v));
        if (burnt[v]) {
            report.burnt.push_back(p);
            continue;
        }
        report.unburnt.push_back(p);
        for (int w : model.neighbors(int(v)))
            if (burnt[w]) {
                report.saturated_boundary.push_back(p);
                break;
            }
    }
    if (order.size() > 1)
        report.nonsaturated_witness = model.point(order[1]);
    return report;
}

bool is_reduced(const MetricGraph& g, const Divisor& d, const PointRef& q, std::optional<int> subdivision)
{
    if (!d.is_effective_away_from(q))
        return false;
    auto [model, chips, base] = prepare(g, d, q, subdivision);
    return kernels::is_reduced(model, chips, base);
}

Divisor reduce(const MetricGraph& g, const Divisor& d, const PointRef& q, std::optional<int> subdivision)
{
    auto [model, chips, base] = prepare(g, d, q, subdivision);
    kernels::reduce(model, chips, base);
    return model.to_divisor(chips);
}

} // namespace gonlab
