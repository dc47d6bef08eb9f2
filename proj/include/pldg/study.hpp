#ifndef PLDG_STUDY_HPP
#define PLDG_STUDY_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pldg/descent.hpp"
#include "pldg/precond.hpp"
#include "pldg/problems.hpp"
#include "pldg/report.hpp"

namespace pldg
{

struct RunConfig
{
  std::string problem_id = "linear";
  double p = 2.0;
  double sigma_r = 0.0; // radial exponent of the regular example
  std::vector<int> degrees{1};
  int levels = 4;
  double eta = 10.0;
  double eps = 1e-14;
  double delta_w = 1e-16;
  double delta_rho = 1e-16;
  int max_iters = 500;
  std::string out_dir; // empty: no CSV output
  std::uint64_t seed = 20240101;

  void validate() const
  {
    if (levels < 1)
      throw std::invalid_argument("RunConfig: need at least one level");
    if (degrees.empty())
      throw std::invalid_argument("RunConfig: need at least one degree");
    for (int k : degrees)
      if (k < 1 || k > 6)
        throw std::invalid_argument("RunConfig: degrees must lie in [1, 6]");
    if (!(eta > 0.0))
      throw std::invalid_argument("RunConfig: eta must be positive");
  }
};

struct DegreeStudy
{
  int degree = 0;
  std::vector<LevelResult> levels;
  std::vector<std::vector<IterationRecord>> histories; // per level
};

struct StudyReport
{
  ProblemSpec problem;
  std::vector<DegreeStudy> degrees;
};

// Runs one manufactured example over a chain of uniformly refined meshes for
// each requested degree: assemble, initial guess, descend, recover the
// gradient variables, measure errors, and (optionally) write
// table_k{K}.csv / history_k{K}_l{L}.csv under out_dir. For p = 2 the
// descent starts from zero so the single preconditioned step is exactly the
// linear LDG solve; otherwise it starts from the Poisson solution.
inline StudyReport run_study(const RunConfig & cfg)
{
  cfg.validate();
  StudyReport report;
  report.problem = problem_by_id(cfg.problem_id, cfg.p, cfg.sigma_r);

  std::vector<std::shared_ptr<const Mesh>> meshes;
  {
    Mesh mesh = build_coarse(report.problem.domain);
    for (int level = 0; level < cfg.levels; ++level) {
      meshes.push_back(std::make_shared<const Mesh>(mesh));
      if (level + 1 < cfg.levels)
        mesh = refine_uniform(mesh);
    }
  }

  const bool write_files = !cfg.out_dir.empty();
  if (write_files)
    std::filesystem::create_directories(cfg.out_dir);

  for (int k : cfg.degrees) {
    DegreeStudy study;
    study.degree = k;
    for (int level = 0; level < cfg.levels; ++level) {
      const auto start = std::chrono::steady_clock::now();
      const EnergyContext ctx = make_context(report.problem, meshes[level], k, cfg.eta);
      SolverConfig solver;
      solver.eps = report.problem.exponent.p == 2.0 ? 0.0 : cfg.eps;
      solver.delta_w = cfg.delta_w;
      solver.delta_rho = cfg.delta_rho;
      solver.max_iters = cfg.max_iters;

      const DGFunction u0 = report.problem.exponent.p == 2.0 ? DGFunction(*ctx.scalar_space)
                                                             : poisson_initial_guess(ctx);
      const DescentResult descent = steepest_descent(ctx, solver, u0);
      const auto [q_h, sigma_h] = recover_gradients(ctx, descent.u);
      const ErrorTriple err = error_norms(ctx, report.problem, descent.u, q_h, sigma_h);

      LevelResult row;
      row.level = level;
      row.n_elements = meshes[level]->n_elements();
      row.n_dof = ctx.scalar_space->n_dof();
      row.err_u = err.u;
      row.err_q = err.q;
      row.err_sigma = err.sigma;
      row.iterations = descent.accepted_steps;
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      study.levels.push_back(row);
      study.histories.push_back(descent.history);
    }
    convergence_orders(study.levels);

    if (write_files) {
      const std::filesystem::path dir(cfg.out_dir);
      std::ofstream table(dir / ("table_k" + std::to_string(k) + ".csv"));
      write_table_csv(table, study.levels);
      for (int level = 0; level < cfg.levels; ++level) {
        std::ofstream hist(dir /
                           ("history_k" + std::to_string(k) + "_l" + std::to_string(level) + ".csv"));
        write_history_csv(hist, study.histories[level]);
      }
    }
    report.degrees.push_back(std::move(study));
  }
  return report;
}

} // namespace pldg

#endif
