#include "fairmtsp/lp.hpp"

#include <cmath>
#include <optional>

namespace fairmtsp::lp {

int LpModel::add_column(double lower, double upper, double objective) {
    if (lower > upper) throw std::invalid_argument("add_column: lower > upper");
    lower_.push_back(lower);
    upper_.push_back(upper);
    obj_.push_back(objective);
    return num_cols() - 1;
}

int LpModel::add_row(Row row) {
    for (const auto& [c, v] : row.coeffs)
        if (c < 0 || c >= num_cols()) throw std::invalid_argument("add_row: unknown column");
    rows_.push_back(std::move(row));
    return num_rows() - 1;
}

void LpModel::add_rows(const std::vector<Row>& rows) {
    for (const auto& r : rows) add_row(r);
}

void LpModel::set_bounds(int column, double lower, double upper) {
    if (column < 0 || column >= num_cols()) throw std::invalid_argument("set_bounds: unknown column");
    if (lower > upper) throw std::invalid_argument("set_bounds: lower > upper");
    lower_[column] = lower;
    upper_[column] = upper;
}

void LpModel::set_objective(int column, double coeff) {
    if (column < 0 || column >= num_cols()) throw std::invalid_argument("set_objective: unknown column");
    obj_[column] = coeff;
}

namespace {

enum class VarState { Basic, AtLower, AtUpper, Free };

// After this many eta updates without a clean factorization the inherited
// basis inverse is refreshed. Keeps warm-start drift bounded.
constexpr long kMaxStalePivots = 100;

// Working problem: min c x, A x = b, lo <= x <= up, where the columns are the
// structural columns, one slack per row, and one artificial per row. Rows are
// equilibrated by their largest coefficient so cost-scale and unit entries
// coexist without wrecking the dual accuracy. Columns live in a compressed
// sparse layout (start/row/value arrays).
class Simplex {
public:
    explicit Simplex(const LpModel& model) : m_(model.num_rows()) {
        nstruct_ = model.num_cols();
        ntot_ = nstruct_ + 2 * m_;
        lo_.resize(ntot_);
        up_.resize(ntot_);
        b_.resize(m_);
        scale_.resize(m_);

        // Count pass, then fill pass, to avoid per-column reallocation.
        std::vector<int> count(ntot_, 0);
        for (int i = 0; i < m_; ++i) {
            const Row& r = model.row(i);
            for (const auto& [c, v] : r.coeffs)
                if (v != 0.0) ++count[c];
            ++count[nstruct_ + i];          // slack
            ++count[nstruct_ + m_ + i];     // artificial
        }
        col_start_.assign(ntot_ + 1, 0);
        for (int j = 0; j < ntot_; ++j) col_start_[j + 1] = col_start_[j] + count[j];
        col_row_.resize(col_start_[ntot_]);
        col_val_.resize(col_start_[ntot_]);
        std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);

        for (int j = 0; j < nstruct_; ++j) {
            lo_[j] = model.lower(j);
            up_[j] = model.upper(j);
        }
        for (int i = 0; i < m_; ++i) {
            const Row& r = model.row(i);
            double scale = 1.0;
            for (const auto& [c, v] : r.coeffs) scale = std::max(scale, std::abs(v));
            scale_[i] = scale;
            for (const auto& [c, v] : r.coeffs) {
                if (v == 0.0) continue;
                col_row_[fill[c]] = i;
                col_val_[fill[c]++] = v / scale;
            }
            b_[i] = r.rhs / scale;
            int s = nstruct_ + i;
            col_row_[fill[s]] = i;
            col_val_[fill[s]++] = 1.0;
            switch (r.sense) {
                case Sense::Le: lo_[s] = 0; up_[s] = kInf; break;
                case Sense::Ge: lo_[s] = -kInf; up_[s] = 0; break;
                case Sense::Eq: lo_[s] = 0; up_[s] = 0; break;
            }
            int a = nstruct_ + m_ + i;
            col_row_[fill[a]] = i;
            col_val_[fill[a]++] = 1.0;  // sign is adjusted per restart
        }

        cost_.assign(ntot_, 0.0);
        model_obj_.assign(ntot_, 0.0);
        for (int j = 0; j < nstruct_; ++j) model_obj_[j] = model.objective(j);
    }

    LpStatus run() {
        // A failed attempt restarts from a fresh artificial basis with Bland
        // pricing from the first pivot: slower, but immune to the stalls and
        // basis decay the aggressive settings can run into.
        for (int attempt = 0; attempt < 2; ++attempt) {
            try {
                return run_once(attempt > 0);
            } catch (const NumericalFailure&) {
                if (attempt > 0) throw;
            }
        }
        throw NumericalFailure("simplex: unreachable");
    }

    // Rebuild the working state from a basis snapshot, inheriting its basis
    // inverse. Appended rows enter with their slack basic, which extends the
    // inverse by a cheap block formula instead of a fresh factorization.
    // Returns false when the snapshot no longer matches the model.
    bool load_warm(const WarmStart& ws) {
        const int old_m = static_cast<int>(ws.basic.size());
        if (old_m > m_) return false;
        if (ws.binv.rows() != old_m || ws.binv.cols() != old_m) return false;
        for (int id : ws.basic)
            if (id < 0 || id >= nstruct_ + m_) return false;

        x_.assign(ntot_, 0.0);
        state_.assign(ntot_, VarState::Free);
        for (int j = 0; j < nstruct_ + m_; ++j) {
            VarState want = VarState::AtLower;
            if (j < static_cast<int>(ws.state.size())) {
                if (ws.state[j] == 1)
                    want = VarState::AtUpper;
                else if (ws.state[j] == 2)
                    want = VarState::Free;
            }
            if (want == VarState::AtLower && !std::isfinite(lo_[j]))
                want = std::isfinite(up_[j]) ? VarState::AtUpper : VarState::Free;
            if (want == VarState::AtUpper && !std::isfinite(up_[j]))
                want = std::isfinite(lo_[j]) ? VarState::AtLower : VarState::Free;
            state_[j] = want;
            x_[j] = want == VarState::AtLower ? lo_[j] : want == VarState::AtUpper ? up_[j] : 0.0;
        }
        // Artificials stay pinned at zero in a warm solve.
        for (int i = 0; i < m_; ++i) {
            int a = nstruct_ + m_ + i;
            lo_[a] = up_[a] = 0;
            x_[a] = 0;
            state_[a] = VarState::AtLower;
        }
        basic_.resize(m_);
        for (int i = 0; i < old_m; ++i) basic_[i] = ws.basic[i];
        for (int i = old_m; i < m_; ++i) basic_[i] = nstruct_ + i;
        for (int i = 0; i < m_; ++i) state_[basic_[i]] = VarState::Basic;

        // binv = [[B^-1, 0], [-C B^-1, I]] with C the new rows over the old
        // basic columns (equilibrated, like everything in this class).
        binv_ = Eigen::MatrixXd::Zero(m_, m_);
        binv_.topLeftCorner(old_m, old_m) = ws.binv;
        if (m_ > old_m) {
            Eigen::VectorXd c(old_m);
            for (int r = old_m; r < m_; ++r) {
                c.setZero();
                bool any = false;
                for (int k = 0; k < old_m; ++k) {
                    int j = basic_[k];
                    for (int e = col_start_[j]; e < col_start_[j + 1]; ++e)
                        if (col_row_[e] == r) {
                            c[k] = col_val_[e];
                            any = true;
                        }
                }
                if (any) binv_.row(r).head(old_m) = -(c.transpose() * ws.binv);
                binv_(r, r) = 1.0;
            }
        }
        stale_pivots_ = ws.stale_pivots;
        if (stale_pivots_ > kMaxStalePivots) {
            try {
                refactorize();
            } catch (const NumericalFailure&) {
                return false;
            }
        } else {
            recompute_basics();
        }
        for (int i = 0; i < m_; ++i)
            if (!std::isfinite(x_[basic_[i]])) return false;
        return true;
    }

    void save_warm(WarmStart& ws) const {
        ws.valid = false;
        for (int id : basic_)
            if (id >= nstruct_ + m_) return;  // a basic artificial is not reusable
        ws.basic = basic_;
        ws.state.assign(nstruct_ + m_, 0);
        for (int j = 0; j < nstruct_ + m_; ++j) {
            if (state_[j] == VarState::AtUpper)
                ws.state[j] = 1;
            else if (state_[j] == VarState::Free)
                ws.state[j] = 2;
        }
        ws.binv = binv_;
        ws.stale_pivots = stale_pivots_;
        ws.valid = true;
    }

    // Dual simplex from the loaded basis down to primal feasibility, then a
    // primal clean-up pass. Empty on "better start cold" (including suspected
    // infeasibility, which the cold two-phase method certifies).
    std::optional<LpStatus> run_warm() {
        cost_ = model_obj_;
        if (!dual_iterate()) return std::nullopt;
        if (!iterate(true, false)) return LpStatus::Unbounded;
        verify_feasible();
        return LpStatus::Optimal;
    }

    Eigen::VectorXd structural_values() const {
        Eigen::VectorXd out(nstruct_);
        for (int j = 0; j < nstruct_; ++j) out[j] = x_[j];
        return out;
    }

    double objective() const {
        double obj = 0;
        for (int j = 0; j < nstruct_; ++j) obj += model_obj_[j] * x_[j];
        return obj;
    }

private:
    void init_basis() {
        // Nonbasics at the bound nearest zero; artificials absorb the residual.
        x_.assign(ntot_, 0.0);
        state_.assign(ntot_, VarState::Free);
        for (int j = 0; j < nstruct_ + m_; ++j) {
            if (std::isfinite(lo_[j]) && (lo_[j] >= 0 || !std::isfinite(up_[j]))) {
                x_[j] = lo_[j];
                state_[j] = VarState::AtLower;
            } else if (std::isfinite(up_[j])) {
                x_[j] = up_[j];
                state_[j] = VarState::AtUpper;
            } else if (std::isfinite(lo_[j])) {
                x_[j] = lo_[j];
                state_[j] = VarState::AtLower;
            }
        }
        Eigen::VectorXd resid = b_;
        for (int j = 0; j < nstruct_ + m_; ++j)
            if (x_[j] != 0.0)
                for (int e = col_start_[j]; e < col_start_[j + 1]; ++e)
                    resid[col_row_[e]] -= col_val_[e] * x_[j];

        basic_.resize(m_);
        binv_ = Eigen::MatrixXd::Zero(m_, m_);
        for (int i = 0; i < m_; ++i) {
            int a = nstruct_ + m_ + i;
            double sgn = resid[i] >= 0 ? 1.0 : -1.0;
            col_val_[col_start_[a]] = sgn;
            lo_[a] = 0;
            up_[a] = kInf;
            x_[a] = std::abs(resid[i]);
            state_[a] = VarState::Basic;
            basic_[i] = a;
            binv_(i, i) = sgn;  // a signed identity is its own inverse
        }
        stale_pivots_ = 0;
    }

    LpStatus run_once(bool force_bland) {
        init_basis();

        // Phase 1: minimize total artificial mass.
        for (int j = 0; j < ntot_; ++j) cost_[j] = j >= nstruct_ + m_ ? 1.0 : 0.0;
        if (!iterate(false, force_bland)) throw NumericalFailure("simplex: phase-1 unbounded");
        double infeas = 0;
        for (int j = nstruct_ + m_; j < ntot_; ++j) infeas += x_[j];
        if (infeas > 1e-7) return LpStatus::Infeasible;

        // Pin the artificials at zero and optimize the real objective.
        for (int j = nstruct_ + m_; j < ntot_; ++j) {
            up_[j] = 0;
            if (state_[j] != VarState::Basic) {
                state_[j] = VarState::AtLower;
                x_[j] = 0;
            }
        }
        cost_ = model_obj_;
        if (!iterate(true, force_bland)) return LpStatus::Unbounded;

        refactorize();
        verify_feasible();
        return LpStatus::Optimal;
    }

    // Dual simplex: the basis is dual feasible (it was primal-dual optimal
    // before rows were appended or bounds moved), so drive out the primal
    // bound violations while keeping the reduced costs signed. Returns false
    // when no entering column qualifies — either the problem became
    // infeasible or the dual step is numerically unclear; the caller then
    // certifies via a cold solve.
    bool dual_iterate() {
        const long max_iter = 1000L + 2L * m_;
        for (long iter = 0;; ++iter) {
            if (iter >= max_iter) throw NumericalFailure("dual simplex: iteration limit");
            if (iter > 0 && iter % 64 == 0) refactorize();

            // Most-violated basic variable leaves.
            int r = -1;
            double worst = 0;
            int sigma = 0;  // +1 above upper bound, -1 below lower bound
            for (int i = 0; i < m_; ++i) {
                int bj = basic_[i];
                double tol = kFeasTol * (1.0 + std::abs(x_[bj]));
                if (std::isfinite(up_[bj]) && x_[bj] > up_[bj] + tol) {
                    double v = x_[bj] - up_[bj];
                    if (v > worst) { worst = v; r = i; sigma = +1; }
                } else if (std::isfinite(lo_[bj]) && x_[bj] < lo_[bj] - tol) {
                    double v = lo_[bj] - x_[bj];
                    if (v > worst) { worst = v; r = i; sigma = -1; }
                }
            }
            if (r < 0) return true;  // primal feasible

            Eigen::VectorXd rho = binv_.row(r);
            Eigen::VectorXd cb(m_);
            for (int i = 0; i < m_; ++i) cb[i] = cost_[basic_[i]];
            Eigen::VectorXd y = binv_.transpose() * cb;

            // Dual ratio test over the nonbasic, non-fixed real columns.
            int enter = -1;
            int dir = 0;
            double best_ratio = 0, best_alpha = 0;
            for (int j = 0; j < nstruct_ + m_; ++j) {
                if (state_[j] == VarState::Basic) continue;
                if (lo_[j] == up_[j]) continue;
                double alpha = 0;
                for (int e = col_start_[j]; e < col_start_[j + 1]; ++e)
                    alpha += rho[col_row_[e]] * col_val_[e];
                if (std::abs(alpha) <= 1e-9) continue;
                // Direction the entering variable may move from its bound.
                int cand;
                if (state_[j] == VarState::AtLower)
                    cand = +1;
                else if (state_[j] == VarState::AtUpper)
                    cand = -1;
                else
                    cand = sigma * alpha > 0 ? +1 : -1;  // free: pick the helping side
                // Moving j by cand shifts the leaving basic by -cand*alpha;
                // require that shift to reduce the violation.
                if (sigma > 0 ? -cand * alpha >= 0 : -cand * alpha <= 0) continue;
                double d = cost_[j];
                for (int e = col_start_[j]; e < col_start_[j + 1]; ++e)
                    d -= y[col_row_[e]] * col_val_[e];
                double ratio = std::abs(d) / std::abs(alpha);
                if (enter < 0 || ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && std::abs(alpha) > std::abs(best_alpha))) {
                    enter = j;
                    dir = cand;
                    best_ratio = ratio;
                    best_alpha = alpha;
                }
            }
            if (enter < 0) return false;

            // Leaving variable lands on its violated-side bound; the step of
            // the entering variable along dir solves x_out - dir t alpha = target.
            int out = basic_[r];
            double target = sigma > 0 ? up_[out] : lo_[out];
            double t = dir * (x_[out] - target) / best_alpha;

            Eigen::VectorXd acol = Eigen::VectorXd::Zero(m_);
            for (int e = col_start_[enter]; e < col_start_[enter + 1]; ++e)
                acol[col_row_[e]] = col_val_[e];
            Eigen::VectorXd alpha_full = binv_ * acol;

            x_[enter] += dir * t;
            for (int i = 0; i < m_; ++i) x_[basic_[i]] -= dir * t * alpha_full[i];
            state_[out] = sigma > 0 ? VarState::AtUpper : VarState::AtLower;
            x_[out] = target;
            state_[enter] = VarState::Basic;
            basic_[r] = enter;

            double p = alpha_full[r];
            if (std::abs(p) < 1e-11) throw NumericalFailure("dual simplex: pivot too small");
            binv_.row(r) /= p;
            for (int i = 0; i < m_; ++i) {
                if (i == r) continue;
                double f = alpha_full[i];
                if (f != 0.0) binv_.row(i) -= f * binv_.row(r);
            }
            ++stale_pivots_;
        }
    }

    // Returns false on unboundedness.
    bool iterate(bool allow_unbounded, bool force_bland) {
        const long max_iter = 20000L + 50L * (m_ + ntot_);
        int degen_streak = 0;
        bool bland = force_bland;
        for (long iter = 0; iter < max_iter; ++iter) {
            if (iter > 0 && iter % 64 == 0) refactorize();

            Eigen::VectorXd cb(m_);
            for (int i = 0; i < m_; ++i) cb[i] = cost_[basic_[i]];
            Eigen::VectorXd y = binv_.transpose() * cb;

            int enter = -1;
            int dir = 0;
            double best = 0;
            for (int j = 0; j < ntot_; ++j) {
                if (state_[j] == VarState::Basic) continue;
                if (lo_[j] == up_[j]) continue;  // fixed
                // Reduced cost, with a tolerance relative to the cancellation
                // mass of the inner product.
                double d = cost_[j];
                double mass = std::abs(cost_[j]);
                for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
                    double t = y[col_row_[e]] * col_val_[e];
                    d -= t;
                    mass += std::abs(t);
                }
                const double dual_tol = kDualTol * (1.0 + mass);
                int cand = 0;
                if ((state_[j] == VarState::AtLower || state_[j] == VarState::Free) && d < -dual_tol)
                    cand = +1;
                else if ((state_[j] == VarState::AtUpper || state_[j] == VarState::Free) && d > dual_tol)
                    cand = -1;
                if (cand == 0) continue;
                if (bland) {
                    enter = j;
                    dir = cand;
                    break;
                }
                if (std::abs(d) > best) {
                    best = std::abs(d);
                    enter = j;
                    dir = cand;
                }
            }
            if (enter < 0) return true;  // optimal for this phase

            Eigen::VectorXd acol = Eigen::VectorXd::Zero(m_);
            for (int e = col_start_[enter]; e < col_start_[enter + 1]; ++e)
                acol[col_row_[e]] = col_val_[e];
            Eigen::VectorXd alpha = binv_ * acol;

            // Two-pass Harris ratio test. Pass 1: largest step with every
            // basic variable allowed a kFeasTol bound overshoot. Pass 2:
            // among rows whose exact ratio fits under that relaxed step,
            // prefer the largest pivot (lowest basic index under Bland).
            // A basic variable already marginally outside its bound then
            // costs one tolerated overshoot instead of pinning t at zero.
            const double range = up_[enter] - lo_[enter];  // may be inf
            double t_relaxed = range;
            for (int i = 0; i < m_; ++i) {
                double delta = -dir * alpha[i];
                int bj = basic_[i];
                if (std::abs(delta) <= 1e-9) continue;
                double slack;
                if (delta > 0) {
                    if (!std::isfinite(up_[bj])) continue;
                    slack = up_[bj] - x_[bj];
                } else {
                    if (!std::isfinite(lo_[bj])) continue;
                    slack = x_[bj] - lo_[bj];
                }
                double tol_i = kFeasTol * (1.0 + std::abs(x_[bj]));
                t_relaxed = std::min(t_relaxed, (slack + tol_i) / std::abs(delta));
            }
            if (!std::isfinite(t_relaxed)) {
                if (!allow_unbounded) throw NumericalFailure("simplex: unbounded in phase 1");
                return false;
            }
            if (t_relaxed < 0) t_relaxed = 0;

            int leave = -1;  // -1: bound flip of entering
            int leave_to_upper = 0;
            double piv = 0;
            double t_max = t_relaxed;
            for (int i = 0; i < m_; ++i) {
                double delta = -dir * alpha[i];
                int bj = basic_[i];
                if (std::abs(delta) <= 1e-9) continue;
                double slack;
                int to_upper;
                if (delta > 0) {
                    if (!std::isfinite(up_[bj])) continue;
                    slack = up_[bj] - x_[bj];
                    to_upper = 1;
                } else {
                    if (!std::isfinite(lo_[bj])) continue;
                    slack = x_[bj] - lo_[bj];
                    to_upper = 0;
                }
                double t = std::max(0.0, slack / std::abs(delta));
                if (t > t_relaxed) continue;
                bool take = leave < 0 || (bland ? basic_[i] < basic_[leave]
                                                : std::abs(alpha[i]) > std::abs(piv));
                if (take) {
                    leave = i;
                    leave_to_upper = to_upper;
                    piv = alpha[i];
                    t_max = t;
                }
            }
            if (leave < 0) {
                t_max = range;  // bound flip
            } else {
                // Minimum-step nudge: moving a hair even on degenerate pivots
                // keeps the objective strictly decreasing, so the basis can
                // never cycle. The overshoot stays inside the Harris slack.
                t_max = std::max(t_max, std::min(t_relaxed, 1e-10));
            }

            if (t_max < 1e-12) {
                if (++degen_streak > 200) bland = true;
            } else {
                degen_streak = 0;
                bland = force_bland;
            }

            // Apply the step.
            x_[enter] += dir * t_max;
            for (int i = 0; i < m_; ++i) x_[basic_[i]] -= dir * t_max * alpha[i];

            if (leave < 0) {
                state_[enter] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
                x_[enter] = dir > 0 ? up_[enter] : lo_[enter];
                continue;
            }

            int out = basic_[leave];
            state_[out] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
            x_[out] = leave_to_upper ? up_[out] : lo_[out];
            state_[enter] = VarState::Basic;
            basic_[leave] = enter;

            // Eta update of the basis inverse.
            double p = alpha[leave];
            if (std::abs(p) < 1e-11) throw NumericalFailure("simplex: pivot too small");
            binv_.row(leave) /= p;
            for (int i = 0; i < m_; ++i) {
                if (i == leave) continue;
                double f = alpha[i];
                if (f != 0.0) binv_.row(i) -= f * binv_.row(leave);
            }
            ++stale_pivots_;
        }
        throw NumericalFailure("simplex: iteration limit reached");
    }

    void refactorize() {
        if (m_ == 0) return;
        Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m_, m_);
        for (int k = 0; k < m_; ++k) {
            int j = basic_[k];
            for (int e = col_start_[j]; e < col_start_[j + 1]; ++e)
                basis(col_row_[e], k) = col_val_[e];
        }
        // Partial-pivoting LU is several times cheaper than full pivoting at
        // this size; accept its inverse only when the residual confirms it,
        // otherwise fall back to the rank-revealing factorization.
        Eigen::PartialPivLU<Eigen::MatrixXd> plu(basis);
        binv_ = plu.inverse();
        // Probe residual ||B (B^-1 w) - w||_inf with a dense probe vector:
        // O(m^2), and any meaningful singularity pollutes every column.
        Eigen::VectorXd w = Eigen::VectorXd::Ones(m_);
        double resid_inf = (basis * (binv_ * w) - w).cwiseAbs().maxCoeff();
        if (!std::isfinite(resid_inf) || resid_inf > 1e-8) {
            Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
            lu.setThreshold(1e-10);
            if (!lu.isInvertible()) throw NumericalFailure("simplex: singular basis");
            binv_ = lu.inverse();
        }
        stale_pivots_ = 0;
        recompute_basics();
    }

    // Recompute basic values from the nonbasic bounds to remove drift.
    void recompute_basics() {
        Eigen::VectorXd resid = b_;
        for (int j = 0; j < ntot_; ++j) {
            if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
            for (int e = col_start_[j]; e < col_start_[j + 1]; ++e)
                resid[col_row_[e]] -= col_val_[e] * x_[j];
        }
        Eigen::VectorXd xb = binv_ * resid;
        for (int i = 0; i < m_; ++i) x_[basic_[i]] = xb[i];
    }

    void verify_feasible() const {
        for (int j = 0; j < ntot_; ++j) {
            double slack_tol = 10 * kFeasTol * (1.0 + std::abs(x_[j]));
            if ((std::isfinite(lo_[j]) && x_[j] < lo_[j] - slack_tol) ||
                (std::isfinite(up_[j]) && x_[j] > up_[j] + slack_tol))
                throw NumericalFailure("simplex: bound violated in final solution");
        }
        Eigen::VectorXd resid = b_;
        for (int j = 0; j < ntot_; ++j)
            if (x_[j] != 0.0)
                for (int e = col_start_[j]; e < col_start_[j + 1]; ++e)
                    resid[col_row_[e]] -= col_val_[e] * x_[j];
        for (int i = 0; i < m_; ++i)
            if (std::abs(resid[i]) > 10 * kFeasTol * (1.0 + std::abs(b_[i])))
                throw NumericalFailure("simplex: row residual too large");
    }

    int m_, nstruct_ = 0, ntot_ = 0;
    std::vector<int> col_start_, col_row_;
    std::vector<double> col_val_;
    std::vector<double> lo_, up_, cost_, model_obj_, x_, scale_;
    std::vector<VarState> state_;
    std::vector<int> basic_;
    long stale_pivots_ = 0;
    Eigen::VectorXd b_;
    Eigen::MatrixXd binv_;
};

}  // namespace

LpSolution solve(const LpModel& model) { return solve(model, nullptr); }

LpSolution solve(const LpModel& model, WarmStart* warm) {
    LpSolution sol;
    if (warm && warm->valid) {
        try {
            Simplex simplex(model);
            if (simplex.load_warm(*warm)) {
                std::optional<LpStatus> status = simplex.run_warm();
                if (status == LpStatus::Optimal) {
                    sol.status = LpStatus::Optimal;
                    sol.x = simplex.structural_values();
                    sol.objective = simplex.objective();
                    simplex.save_warm(*warm);
                    return sol;
                }
                if (status == LpStatus::Unbounded) {
                    sol.status = LpStatus::Unbounded;
                    return sol;
                }
            }
        } catch (const NumericalFailure&) {
            // fall through to the cold solve
        }
        warm->valid = false;
    }

    Simplex simplex(model);
    sol.status = simplex.run();
    if (sol.status == LpStatus::Optimal) {
        sol.x = simplex.structural_values();
        sol.objective = simplex.objective();
        if (warm) simplex.save_warm(*warm);
    } else if (warm) {
        warm->valid = false;
    }
    return sol;
}

}  // namespace fairmtsp::lp
