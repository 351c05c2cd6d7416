#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twotemp/solver.hpp"
#include "twotemp/sweep.hpp"

namespace twotemp::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_runtime = 2 };

/// Full command line including the program name. Reports go to `out`,
/// errors to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 17 significant digits, shortest exponent form.
std::string format_number(double x);

/// t,x,rho1,rho2,v1,v2,s1,s2,T1,T2,Tavg,p,p0,pi,divv with one row per cell per frame.
void write_snapshots(std::ostream& os, const Trajectory& traj, const Grid1D& grid);

/// t,mass1,mass2,momentum,energy,entropy,min_Tgap with one row per frame.
void write_diagnostics(std::ostream& os, const Trajectory& traj);

/// step,t,cell
void write_regularization_log(std::ostream& os, const Trajectory& traj);

void write_sweep(std::ostream& os, const SweepResult& result);

}  // namespace twotemp::cli
