#pragma once

// Symbolic weights on [0,inf] built from representables and constants, and
// their colimits in ([0,inf], d_L) and ([0,inf], d_R).

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"
#include "approach_lab/net.hpp"

namespace approach_lab {

/// Continuous piecewise linear map [0,inf) -> [0,inf], or the constant inf.
/// Piece i covers [start_i, start_{i+1}) and the last piece is unbounded.
class PiecewiseLinear {
 public:
  struct Piece {
    BigRational start;
    BigRational value;  // at start
    BigRational slope;
  };

  static PiecewiseLinear constant(const ExtValue& c) {
    PiecewiseLinear f;
    if (c.is_infinite()) {
      f.infinite_ = true;
      return f;
    }
    f.pieces_.push_back({0, c.to_rational(), 0});
    return f;
  }

  /// slope * x + offset on all of [0,inf), clamped below at 0 by the caller.
  static PiecewiseLinear linear(const BigRational& offset, const BigRational& slope) {
    PiecewiseLinear f;
    f.pieces_.push_back({0, offset, slope});
    return f;
  }

  bool is_infinite() const noexcept { return infinite_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }

  BigRational eval(const BigRational& x) const {
    if (infinite_) throw domain_error("evaluating the constant inf as a rational");
    const Piece* p = &pieces_.front();
    for (const auto& q : pieces_)
      if (q.start <= x) p = &q;
    return p->value + p->slope * (x - p->start);
  }

  ExtValue eval_ext(const BigRational& x) const { return infinite_ ? kInf : ExtValue::from_rational(eval(x)); }

  PiecewiseLinear plus(const BigRational& r) const {
    PiecewiseLinear f = *this;
    for (auto& p : f.pieces_) p.value += r;
    return f;
  }

  /// max(f - r, 0), splitting pieces where f crosses r.
  PiecewiseLinear truncated_minus(const BigRational& r) const {
    if (infinite_) return *this;
    PiecewiseLinear shifted = *this;
    for (auto& p : shifted.pieces_) p.value -= r;
    return combine(shifted, constant(ExtValue{}), true);
  }

  static PiecewiseLinear max(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    if (f.infinite_ || g.infinite_) return constant(kInf);
    return combine(f, g, true);
  }

  static PiecewiseLinear min(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    if (f.infinite_) return g;
    if (g.infinite_) return f;
    return combine(f, g, false);
  }

  std::vector<BigRational> breakpoints() const {
    std::vector<BigRational> b;
    for (const auto& p : pieces_) b.push_back(p.start);
    return b;
  }

  const Piece& last() const { return pieces_.back(); }

 private:
  static PiecewiseLinear combine(const PiecewiseLinear& f, const PiecewiseLinear& g, bool take_max) {
    std::vector<BigRational> cuts;
    for (const auto& p : f.pieces_) cuts.push_back(p.start);
    for (const auto& p : g.pieces_) cuts.push_back(p.start);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<BigRational> all = cuts;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const BigRational& a = cuts[i];
      const Piece& pf = f.piece_at(a);
      const Piece& pg = g.piece_at(a);
      if (pf.slope == pg.slope) continue;
      BigRational fa = f.eval(a), ga = g.eval(a);
      BigRational t = a + (ga - fa) / (pf.slope - pg.slope);
      bool inside = t > a && (i + 1 == cuts.size() || t < cuts[i + 1]);
      if (inside) all.push_back(t);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    PiecewiseLinear h;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const BigRational& a = all[i];
      BigRational fa = f.eval(a), ga = g.eval(a);
      const Piece& pf = f.piece_at(a);
      const Piece& pg = g.piece_at(a);
      bool use_f;
      if (fa != ga) use_f = take_max ? fa > ga : fa < ga;
      else use_f = take_max ? pf.slope >= pg.slope : pf.slope <= pg.slope;
      h.pieces_.push_back(use_f ? Piece{a, fa, pf.slope} : Piece{a, ga, pg.slope});
    }
    h.simplify();
    return h;
  }

  const Piece& piece_at(const BigRational& x) const {
    const Piece* p = &pieces_.front();
    for (const auto& q : pieces_)
      if (q.start <= x) p = &q;
    return *p;
  }

  void simplify() {
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
      if (!out.empty() && out.back().slope == p.slope && out.back().value + out.back().slope * (p.start - out.back().start) == p.value) continue;
      out.push_back(p);
    }
    pieces_ = std::move(out);
  }

  bool infinite_ = false;
  std::vector<Piece> pieces_;
};

/// Weights on [0,inf] from a fixed catalogue: representables d_L(-,c) on DL
/// and d_R(-,c) on DR, constants, and max / min / +r / (-)r of those.
class WeightExpr {
 public:
  enum class Op { rep, constant, max, min, plus, minus };

  static WeightExpr representable(const ExtValue& c) { return WeightExpr(Op::rep, c); }
  static WeightExpr constant(const ExtValue& c) { return WeightExpr(Op::constant, c); }
  static WeightExpr max(WeightExpr a, WeightExpr b) { return WeightExpr(Op::max, {}, std::move(a), std::move(b)); }
  static WeightExpr min(WeightExpr a, WeightExpr b) { return WeightExpr(Op::min, {}, std::move(a), std::move(b)); }
  static WeightExpr plus(WeightExpr a, const ExtValue& r) { return WeightExpr(Op::plus, r, std::move(a)); }
  static WeightExpr minus(WeightExpr a, const ExtValue& r) { return WeightExpr(Op::minus, r, std::move(a)); }

  /// Exact value at any point of [0,inf] in the given carrier.
  ExtValue eval(Carrier c, const ExtValue& x) const {
    switch (op_) {
      case Op::rep: return carrier_distance(c, x, value_);
      case Op::constant: return value_;
      case Op::max: return std::max(left_->eval(c, x), right_->eval(c, x));
      case Op::min: return std::min(left_->eval(c, x), right_->eval(c, x));
      case Op::plus: return left_->eval(c, x) + value_;
      case Op::minus: return tminus(left_->eval(c, x), value_);
    }
    return {};
  }

  /// Restriction to [0,inf).
  PiecewiseLinear to_piecewise(Carrier c) const {
    switch (op_) {
      case Op::rep: {
        if (value_.is_infinite()) return PiecewiseLinear::constant(c == Carrier::DL ? kInf : ExtValue{});
        BigRational v = value_.to_rational();
        // c (-) x on DL, x (-) c on DR
        if (c == Carrier::DL) return PiecewiseLinear::linear(v, -1).truncated_minus(0);
        return PiecewiseLinear::linear(-v, 1).truncated_minus(0);
      }
      case Op::constant: return PiecewiseLinear::constant(value_);
      case Op::max: return PiecewiseLinear::max(left_->to_piecewise(c), right_->to_piecewise(c));
      case Op::min: return PiecewiseLinear::min(left_->to_piecewise(c), right_->to_piecewise(c));
      case Op::plus: {
        auto f = left_->to_piecewise(c);
        return value_.is_infinite() ? PiecewiseLinear::constant(kInf) : f.plus(value_.to_rational());
      }
      case Op::minus: {
        auto f = left_->to_piecewise(c);
        if (value_.is_infinite()) return f.is_infinite() && mutation_active(Mutation::inf_minus_inf) ? f : PiecewiseLinear::constant(ExtValue{});
        return f.truncated_minus(value_.to_rational());
      }
    }
    return PiecewiseLinear::constant(ExtValue{});
  }

  std::string str(Carrier c) const {
    switch (op_) {
      case Op::rep: return std::string(c == Carrier::DL ? "dL" : "dR") + "(-," + value_.str() + ")";
      case Op::constant: return value_.str();
      case Op::max: return "max(" + left_->str(c) + "," + right_->str(c) + ")";
      case Op::min: return "min(" + left_->str(c) + "," + right_->str(c) + ")";
      case Op::plus: return "(" + left_->str(c) + "+" + value_.str() + ")";
      case Op::minus: return "(" + left_->str(c) + "-" + value_.str() + ")";
    }
    return "";
  }

 private:
  WeightExpr(Op op, ExtValue v) : op_(op), value_(std::move(v)) {}
  WeightExpr(Op op, ExtValue v, WeightExpr a) : op_(op), value_(std::move(v)), left_(std::make_shared<const WeightExpr>(std::move(a))) {}
  WeightExpr(Op op, ExtValue v, WeightExpr a, WeightExpr b)
      : op_(op), value_(std::move(v)), left_(std::make_shared<const WeightExpr>(std::move(a))), right_(std::make_shared<const WeightExpr>(std::move(b))) {}

  Op op_;
  ExtValue value_;
  std::shared_ptr<const WeightExpr> left_;
  std::shared_ptr<const WeightExpr> right_;
};

/// inf_{x in [0,inf]} phi(x) + x. The summand is piecewise linear and
/// continuous on [0,inf) and tends to inf, so the inf is attained at a
/// breakpoint.
inline ExtValue colimit_dL(const WeightExpr& phi) {
  auto f = phi.to_piecewise(Carrier::DL);
  if (f.is_infinite()) return kInf;
  if (f.last().slope < -1) throw domain_error("descriptor is not a weight of DL");
  ExtValue best = kInf;
  for (const auto& t : f.breakpoints()) best = std::min(best, ExtValue::from_rational(f.eval(t) + t));
  return best;
}

/// sup_{x in [0,inf]} x (-) psi(x), including x = inf.
inline ExtValue colimit_dR(const WeightExpr& psi) {
  ExtValue best = tminus(kInf, psi.eval(Carrier::DR, kInf));
  auto f = psi.to_piecewise(Carrier::DR);
  if (f.is_infinite()) return best;
  for (const auto& t : f.breakpoints()) best = std::max(best, tminus(ExtValue::from_rational(t), ExtValue::from_rational(f.eval(t))));
  if (f.last().slope < 1) return kInf;
  return best;
}

}  // namespace approach_lab
