#include "symdet/report_io.hpp"

namespace symdet {

ResultFile report_to_result(const PipelineReport& report) {
    ResultDiagnostics d;
    d.bounds = report.degree_bounds.bounds();
    if (report.reduced) {
        const auto& plan = report.plan;
        const std::size_t v = plan.vars.size();
        for (std::size_t i = 0; i < v; ++i) {
            if (plan.pack[i] == 1) continue;
            const std::size_t target = i <= plan.split ? plan.split : v - 1;
            d.substitution.push_back(plan.vars.name(i) + "=" + plan.vars.name(target) + "^" +
                                     std::to_string(plan.pack[i]));
        }
    }
    d.reduced_bounds = report.solve_bounds;
    d.lambda = report.lambda.get_d();
    d.epsilon = format_epsilon(report.epsilon);
    d.precision_bits = static_cast<std::uint64_t>(report.precision_bits);
    d.nodes = report.node_count;
    d.verified = report.verified;
    d.escalations = report.escalations;
    d.ms_eval = report.ms_eval;
    d.ms_solve = report.ms_solve;
    return ResultFile::from_polynomial(report.determinant, std::move(d));
}

} // namespace symdet
