#include "ehsched/curve.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "ehsched/error.hpp"
#include "format_util.hpp"

namespace ehsched {
namespace {

constexpr int kMonotonicitySamples = 10000;

double eval_piece(const Piece& piece, double t) {
  return std::visit([t](const auto& p) { return p(t); }, piece);
}

std::string piece_prefix(const Piece& piece) {
  return std::holds_alternative<Polynomial>(piece) ? "poly" : "expc";
}

std::vector<double> piece_params(const Piece& piece) {
  if (const auto* poly = std::get_if<Polynomial>(&piece)) return poly->coeffs;
  const auto& e = std::get<ExpPower>(piece);
  return {e.scale, e.rate, e.exponent};
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

// Cursor over a curve expression.
class TermReader {
 public:
  explicit TermReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  std::string_view name() {
    skip_space();
    const auto colon = text_.find(':', pos_);
    if (colon == std::string_view::npos) fail("expected `<kind>:`");
    const auto out = text_.substr(pos_, colon - pos_);
    pos_ = colon + 1;
    return out;
  }

  std::vector<double> numbers(char open, char close) {
    expect(open);
    const auto end = text_.find(close, pos_);
    if (end == std::string_view::npos) {
      fail(std::string("missing `") + close + "`");
    }
    std::vector<double> out;
    auto body = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    while (true) {
      const auto comma = body.find(',');
      const auto value = parse_double(body.substr(0, comma));
      if (!value) fail("`" + std::string(body.substr(0, comma)) +
                       "` is not a number");
      out.push_back(*value);
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return out;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected `") + c + "`");
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(0, "curve term at column " + std::to_string(pos_ + 1) +
                            ": " + what);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double ExpPower::operator()(double t) const {
  return scale * std::exp(rate * std::pow(t, exponent));
}

CumulativeCurve::CumulativeCurve(std::vector<Segment> segments,
                                 std::vector<Jump> jumps, double horizon)
    : segments_(std::move(segments)), horizon_(horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ValidationError("horizon", "must be positive and finite");
  }
  std::stable_sort(jumps.begin(), jumps.end(),
                   [](const Jump& a, const Jump& b) { return a.time < b.time; });
  for (const auto& j : jumps) {
    if (!(j.time >= 0.0) || j.time > horizon || !std::isfinite(j.amount)) {
      throw ValidationError("jump", "time " + format_double(j.time) +
                                        " outside [0, horizon]");
    }
    if (j.amount < 0.0) {
      throw ValidationError("monotonicity",
                            "negative jump at t=" + format_double(j.time));
    }
    if (!jumps_.empty() && jumps_.back().time == j.time) {
      jumps_.back().amount += j.amount;
    } else {
      jumps_.push_back(j);
    }
  }
  double acc = 0.0;
  jump_prefix_.reserve(jumps_.size());
  for (const auto& j : jumps_) {
    acc += j.amount;
    jump_prefix_.push_back(acc);
  }
  validate();
}

CumulativeCurve CumulativeCurve::constant(double value, double horizon) {
  return CumulativeCurve({Segment{0.0, horizon, Polynomial{{value}}}}, {},
                         horizon);
}

void CumulativeCurve::validate() const {
  double prev_end = 0.0;
  for (const auto& s : segments_) {
    if (!(s.start >= prev_end) || !(s.end > s.start) ||
        !std::isfinite(s.end)) {
      throw ValidationError("segments",
                            "segments must be ordered, non-overlapping and "
                            "non-empty, starting at t >= 0");
    }
    if (s.start >= horizon_) {
      throw ValidationError("segments", "segment starts beyond the horizon");
    }
    if (const auto* poly = std::get_if<Polynomial>(&s.piece)) {
      if (poly->coeffs.empty()) {
        throw ValidationError("segments", "polynomial without coefficients");
      }
    }
    prev_end = s.end;
  }

  std::vector<double> times;
  times.reserve(kMonotonicitySamples + 1);
  for (int i = 0; i <= kMonotonicitySamples; ++i) {
    times.push_back(horizon_ * i / kMonotonicitySamples);
  }
  const auto bps = breakpoints();
  std::vector<double> merged;
  std::merge(times.begin(), times.end(), bps.begin(), bps.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  double prev = 0.0;
  for (const double t : merged) {
    const double before = left_limit(t);
    const double at = eval(t);
    if (!std::isfinite(before) || !std::isfinite(at)) {
      throw ValidationError("bounded",
                            "curve is not finite at t=" + format_double(t));
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(at));
    if (t == 0.0 && at < 0.0) {
      throw ValidationError("non-negativity", "curve starts below zero");
    }
    if (before < prev - slack || at < before - slack) {
      throw ValidationError("monotonicity",
                            "curve decreases near t=" + format_double(t));
    }
    prev = at;
  }
}

double CumulativeCurve::analytic(double t) const {
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](double v, const Segment& s) { return v < s.start; });
  if (it == segments_.begin()) return 0.0;
  const Segment& s = *std::prev(it);
  return eval_piece(s.piece, std::min(t, s.end));
}

double CumulativeCurve::analytic_left(double t) const {
  auto it = std::lower_bound(
      segments_.begin(), segments_.end(), t,
      [](const Segment& s, double v) { return s.start < v; });
  if (it == segments_.begin()) return 0.0;
  const Segment& s = *std::prev(it);
  return eval_piece(s.piece, std::min(t, s.end));
}

double CumulativeCurve::jumps_through(double t, bool inclusive) const {
  const auto cmp_incl = [](double v, const Jump& j) { return v < j.time; };
  const auto cmp_excl = [](double v, const Jump& j) { return v <= j.time; };
  const auto it = inclusive
                      ? std::upper_bound(jumps_.begin(), jumps_.end(), t, cmp_incl)
                      : std::upper_bound(jumps_.begin(), jumps_.end(), t, cmp_excl);
  const auto n = static_cast<std::size_t>(it - jumps_.begin());
  return n == 0 ? 0.0 : jump_prefix_[n - 1];
}

double CumulativeCurve::operator()(double t) const {
  if (!(t >= 0.0) || t > horizon_) {
    throw DomainError("t=" + format_double(t) + " outside [0, " +
                      format_double(horizon_) + "]");
  }
  return analytic(t) + jumps_through(t, true);
}

double CumulativeCurve::left_limit(double t) const {
  if (!(t >= 0.0) || t > horizon_) {
    throw DomainError("t=" + format_double(t) + " outside [0, " +
                      format_double(horizon_) + "]");
  }
  if (t == 0.0) return 0.0;
  return analytic_left(t) + jumps_through(t, false);
}

std::vector<double> CumulativeCurve::breakpoints() const {
  std::vector<double> out{0.0, horizon_};
  for (const auto& s : segments_) {
    if (s.start <= horizon_) out.push_back(s.start);
    if (s.end <= horizon_) out.push_back(s.end);
  }
  for (const auto& j : jumps_) out.push_back(j.time);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CumulativeCurve CumulativeCurve::discretize(double period) const {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw DomainError("discretization period must be positive");
  }
  std::vector<Jump> stairs;
  double prev = 0.0;
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * period;
    if (t > horizon_) break;
    const double v = eval(t);
    const double step = std::max(0.0, v - prev);
    if (step > 0.0) stairs.push_back({t, step});
    prev = std::max(prev, v);
  }
  return CumulativeCurve({}, std::move(stairs), horizon_);
}

CumulativeCurve CumulativeCurve::scaled(double factor) const {
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw DomainError("scale factor must be finite and non-negative");
  }
  std::vector<Segment> segs = segments_;
  for (auto& s : segs) {
    if (auto* poly = std::get_if<Polynomial>(&s.piece)) {
      for (auto& c : poly->coeffs) c *= factor;
    } else {
      std::get<ExpPower>(s.piece).scale *= factor;
    }
  }
  std::vector<Jump> js = jumps_;
  for (auto& j : js) j.amount *= factor;
  return CumulativeCurve(std::move(segs), std::move(js), horizon_);
}

std::string CumulativeCurve::to_string() const {
  std::string out;
  const auto sep = [&out] {
    if (!out.empty()) out += ' ';
  };
  for (const auto& s : segments_) {
    sep();
    out += piece_prefix(s.piece) + ":(" + join(piece_params(s.piece)) + ")@[" +
           format_double(s.start) + "," + format_double(s.end) + ")";
  }
  for (const auto& j : jumps_) {
    sep();
    out += "jump:(" + format_double(j.time) + "," + format_double(j.amount) +
           ")";
  }
  return out;
}

CumulativeCurve CumulativeCurve::parse(const std::string& text,
                                       double horizon) {
  TermReader reader(text);
  std::vector<Segment> segments;
  std::vector<Jump> jumps;
  if (reader.at_end()) reader.fail("empty curve");
  while (!reader.at_end()) {
    const auto kind = reader.name();
    if (kind == "jump") {
      const auto args = reader.numbers('(', ')');
      if (args.size() != 2) reader.fail("jump takes (t,v)");
      jumps.push_back({args[0], args[1]});
      continue;
    }
    if (kind != "poly" && kind != "expc") {
      reader.fail("unknown term kind `" + std::string(kind) + "`");
    }
    const auto args = reader.numbers('(', ')');
    reader.expect('@');
    const auto range = reader.numbers('[', ')');
    if (range.size() != 2) reader.fail("range takes [s,e)");
    Piece piece;
    if (kind == "poly") {
      piece = Polynomial{args};
    } else {
      if (args.size() != 3) reader.fail("expc takes (a,b,k)");
      piece = ExpPower{args[0], args[1], args[2]};
    }
    segments.push_back({range[0], range[1], std::move(piece)});
  }
  return CumulativeCurve(std::move(segments), std::move(jumps), horizon);
}

}  // namespace ehsched
