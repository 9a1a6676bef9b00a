#pragma once

// Dormand-Prince 8(5,3) with 7th-order dense output (Hairer-Norsett-Wanner DOP853),
// stepping one accepted step at a time so callers can locate events on the
// dense output of the step just taken.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "eulertop/error.hpp"

namespace eulertop {

template <std::size_t N>
using Vec = std::array<double, N>;

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000;

  void validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0)) throw InvalidSpecError("integrator tolerances must be positive");
    if (!(max_step > 0.0)) throw InvalidSpecError("max step must be positive");
    if (max_steps == 0) throw InvalidSpecError("max steps must be positive");
  }
};

/// Continuous extension of one accepted step on [t0, t0 + h].
template <std::size_t N>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::array<Vec<N>, 8> rc{};

  double t1() const { return t0 + h; }

  Vec<N> operator()(double t) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    Vec<N> out;
    for (std::size_t i = 0; i < N; ++i)
      out[i] = rc[0][i] +
               s * (rc[1][i] +
                    s1 * (rc[2][i] + s * (rc[3][i] + s1 * (rc[4][i] + s * (rc[5][i] + s1 * (rc[6][i] + s * rc[7][i]))))));
    return out;
  }
};

namespace dop853 {
// clang-format off
inline constexpr double c2 = 0.526001519587677318785587544488E-01, c3 = 0.789002279381515978178381316732E-01,
  c4 = 0.118350341907227396726757197510E+00, c5 = 0.281649658092772603273242802490E+00,
  c6 = 0.333333333333333333333333333333E+00, c7 = 0.25E+00, c8 = 0.307692307692307692307692307692E+00,
  c9 = 0.651282051282051282051282051282E+00, c10 = 0.6E+00, c11 = 0.857142857142857142857142857142E+00,
  c14 = 0.1E+00, c15 = 0.2E+00, c16 = 0.777777777777777777777777777778E+00;

inline constexpr double b1 = 5.42937341165687622380535766363E-2, b6 = 4.45031289275240888144113950566E0,
  b7 = 1.89151789931450038304281599044E0, b8 = -5.8012039600105847814672114227E0,
  b9 = 3.1116436695781989440891606237E-1, b10 = -1.52160949662516078556178806805E-1,
  b11 = 2.01365400804030348374776537501E-1, b12 = 4.47106157277725905176885569043E-2;

inline constexpr double bhh1 = 0.244094488188976377952755905512E+00, bhh2 = 0.733846688281611857341361741547E+00,
  bhh3 = 0.220588235294117647058823529412E-01;

inline constexpr double er1 = 0.1312004499419488073250102996E-01, er6 = -0.1225156446376204440720569753E+01,
  er7 = -0.4957589496572501915214079952E+00, er8 = 0.1664377182454986536961530415E+01,
  er9 = -0.3503288487499736816886487290E+00, er10 = 0.3341791187130174790297318841E+00,
  er11 = 0.8192320648511571246570742613E-01, er12 = -0.2235530786388629525884427845E-01;

inline constexpr double a21 = 5.26001519587677318785587544488E-2, a31 = 1.97250569845378994544595329183E-2,
  a32 = 5.91751709536136983633785987549E-2, a41 = 2.95875854768068491816892993775E-2,
  a43 = 8.87627564304205475450678981324E-2, a51 = 2.41365134159266685502369798665E-1,
  a53 = -8.84549479328286085344864962717E-1, a54 = 9.24834003261792003115737966543E-1,
  a61 = 3.7037037037037037037037037037E-2, a64 = 1.70828608729473871279604482173E-1,
  a65 = 1.25467687566822425016691814123E-1, a71 = 3.7109375E-2, a74 = 1.70252211019544039314978060272E-1,
  a75 = 6.02165389804559606850219397283E-2, a76 = -1.7578125E-2;
inline constexpr double a81 = 3.70920001185047927108779319836E-2, a84 = 1.70383925712239993810214054705E-1,
  a85 = 1.07262030446373284651809199168E-1, a86 = -1.53194377486244017527936158236E-2,
  a87 = 8.27378916381402288758473766002E-3, a91 = 6.24110958716075717114429577812E-1,
  a94 = -3.36089262944694129406857109825E0, a95 = -8.68219346841726006818189891453E-1,
  a96 = 2.75920996994467083049415600797E1, a97 = 2.01540675504778934086186788979E1,
  a98 = -4.34898841810699588477366255144E1, a101 = 4.77662536438264365890433908527E-1,
  a104 = -2.48811461997166764192642586468E0, a105 = -5.90290826836842996371446475743E-1,
  a106 = 2.12300514481811942347288949897E1, a107 = 1.52792336328824235832596922938E1,
  a108 = -3.32882109689848629194453265587E1, a109 = -2.03312017085086261358222928593E-2;
inline constexpr double a111 = -9.3714243008598732571704021658E-1, a114 = 5.18637242884406370830023853209E0,
  a115 = 1.09143734899672957818500254654E0, a116 = -8.14978701074692612513997267357E0,
  a117 = -1.85200656599969598641566180701E1, a118 = 2.27394870993505042818970056734E1,
  a119 = 2.49360555267965238987089396762E0, a1110 = -3.0467644718982195003823669022E0,
  a121 = 2.27331014751653820792359768449E0, a124 = -1.05344954667372501984066689879E1,
  a125 = -2.00087205822486249909675718444E0, a126 = -1.79589318631187989172765950534E1,
  a127 = 2.79488845294199600508499808837E1, a128 = -2.85899827713502369474065508674E0,
  a129 = -8.87285693353062954433549289258E0, a1210 = 1.23605671757943030647266201528E1,
  a1211 = 6.43392746015763530355970484046E-1;

inline constexpr double a141 = 5.61675022830479523392909219681E-2, a147 = 2.53500210216624811088794765333E-1,
  a148 = -2.46239037470802489917441475441E-1, a149 = -1.24191423263816360469010140626E-1,
  a1410 = 1.5329179827876569731206322685E-1, a1411 = 8.20105229563468988491666602057E-3,
  a1412 = 7.56789766054569976138603589584E-3, a1413 = -8.298E-3;
inline constexpr double a151 = 3.18346481635021405060768473261E-2, a156 = 2.83009096723667755288322961402E-2,
  a157 = 5.35419883074385676223797384372E-2, a158 = -5.49237485713909884646569340306E-2,
  a1511 = -1.08347328697249322858509316994E-4, a1512 = 3.82571090835658412954920192323E-4,
  a1513 = -3.40465008687404560802977114492E-4, a1514 = 1.41312443674632500278074618366E-1;
inline constexpr double a161 = -4.28896301583791923408573538692E-1, a166 = -4.69762141536116384314449447206E0,
  a167 = 7.68342119606259904184240953878E0, a168 = 4.06898981839711007970213554331E0,
  a169 = 3.56727187455281109270669543021E-1, a1613 = -1.39902416515901462129418009734E-3,
  a1614 = 2.9475147891527723389556272149E0, a1615 = -9.15095847217987001081870187138E0;

inline constexpr double d41 = -0.84289382761090128651353491142E+01, d46 = 0.56671495351937776962531783590E+00,
  d47 = -0.30689499459498916912797304727E+01, d48 = 0.23846676565120698287728149680E+01,
  d49 = 0.21170345824450282767155149946E+01, d410 = -0.87139158377797299206789907490E+00,
  d411 = 0.22404374302607882758541771650E+01, d412 = 0.63157877876946881815570249290E+00,
  d413 = -0.88990336451333310820698117400E-01, d414 = 0.18148505520854727256656404962E+02,
  d415 = -0.91946323924783554000451984436E+01, d416 = -0.44360363875948939664310572000E+01;
inline constexpr double d51 = 0.10427508642579134603413151009E+02, d56 = 0.24228349177525818288430175319E+03,
  d57 = 0.16520045171727028198505394887E+03, d58 = -0.37454675472269020279518312152E+03,
  d59 = -0.22113666853125306036270938578E+02, d510 = 0.77334326684722638389603898808E+01,
  d511 = -0.30674084731089398182061213626E+02, d512 = -0.93321305264302278729567221706E+01,
  d513 = 0.15697238121770843886131091075E+02, d514 = -0.31139403219565177677282850411E+02,
  d515 = -0.93529243588444783865713862664E+01, d516 = 0.35816841486394083752465898540E+02;
inline constexpr double d61 = 0.19985053242002433820987653617E+02, d66 = -0.38703730874935176555105901742E+03,
  d67 = -0.18917813819516756882830838328E+03, d68 = 0.52780815920542364900561016686E+03,
  d69 = -0.11573902539959630126141871134E+02, d610 = 0.68812326946963000169666922661E+01,
  d611 = -0.10006050966910838403183860980E+01, d612 = 0.77771377980534432092869265740E+00,
  d613 = -0.27782057523535084065932004339E+01, d614 = -0.60196695231264120758267380846E+02,
  d615 = 0.84320405506677161018159903784E+02, d616 = 0.11992291136182789328035130030E+02;
inline constexpr double d71 = -0.25693933462703749003312586129E+02, d76 = -0.15418974869023643374053993627E+03,
  d77 = -0.23152937917604549567536039109E+03, d78 = 0.35763911791061412378285349910E+03,
  d79 = 0.93405324183624310003907691704E+02, d710 = -0.37458323136451633156875139351E+02,
  d711 = 0.10409964950896230045147246184E+03, d712 = 0.29840293426660503123344363579E+02,
  d713 = -0.43533456590011143754432175058E+02, d714 = 0.96324553959188282948394950600E+02,
  d715 = -0.39177261675615439165231486172E+02, d716 = -0.14972683625798562581422125276E+03;
// clang-format on
}  // namespace dop853

/// Forward-in-time DOP853 stepper for an autonomous field f: Vec<N> -> Vec<N>.
template <std::size_t N, class F>
class Dop853 {
 public:
  Dop853(F f, double t0, const Vec<N>& y0, double t_end, IntegratorConfig cfg = {})
      : f_(std::move(f)), cfg_(cfg), t_(t0), t_end_(t_end), y_(y0) {
    cfg_.validate();
    if (!(t_end > t0)) throw InvalidSpecError("integration interval must have t_end > t0");
    k1_ = eval(y_);
    h_ = initial_step();
  }

  double t() const { return t_; }
  const Vec<N>& y() const { return y_; }
  bool done() const { return t_ >= t_end_; }
  std::size_t steps() const { return accepted_; }
  std::size_t evaluations() const { return evaluations_; }
  const DenseStep<N>& last_step() const { return dense_; }

  /// Advances by one accepted step; the step's dense output is available from last_step().
  const DenseStep<N>& step() {
    using namespace dop853;
    if (done()) throw NumericalError("integration already reached t_end");
    const double expo = 1.0 / 8.0;
    bool rejected = false;
    for (;;) {
      if (accepted_ + rejected_ >= cfg_.max_steps) throw NumericalError("maximum number of steps exceeded");
      if (0.1 * std::abs(h_) <= std::abs(t_) * kUround) throw NumericalError("step size underflow");
      bool last = false;
      if (t_ + 1.01 * h_ >= t_end_) {
        h_ = t_end_ - t_;
        last = true;
      }
      stages();
      const double err = error_estimate();
      if (!std::isfinite(err)) {
        h_ *= 0.25;
        ++rejected_;
        rejected = true;
        continue;
      }
      const double fac11 = std::pow(err, expo);
      double fac = std::clamp(fac11 / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
      double h_new = h_ / fac;
      if (err <= 1.0) {
        const Vec<N> k_new = eval(y_new_);
        dense_output(k_new);
        k1_ = k_new;
        y_ = y_new_;
        t_ = last ? t_end_ : t_ + h_;
        ++accepted_;
        h_new = std::min(std::abs(h_new), cfg_.max_step);
        if (rejected) h_new = std::min(h_new, std::abs(h_));
        h_ = h_new;
        return dense_;
      }
      h_ = h_ / std::min(1.0 / kFacMin, fac11 / kSafe);
      ++rejected_;
      rejected = true;
    }
  }

 private:
  static constexpr double kUround = 2.3e-16;
  static constexpr double kSafe = 0.9;
  static constexpr double kFacMin = 1.0 / 3.0;
  static constexpr double kFacMax = 6.0;

  Vec<N> eval(const Vec<N>& y) {
    ++evaluations_;
    return f_(y);
  }

  template <class... Terms>
  Vec<N> combine(double h, Terms&&... terms) const {
    Vec<N> out = y_;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      ((acc += terms.first * (*terms.second)[i]), ...);
      out[i] += h * acc;
    }
    return out;
  }

  static std::pair<double, const Vec<N>*> tm(double c, const Vec<N>& k) { return {c, &k}; }

  void stages() {
    using namespace dop853;
    const double h = h_;
    k2_ = eval(combine(h, tm(a21, k1_)));
    k3_ = eval(combine(h, tm(a31, k1_), tm(a32, k2_)));
    k4_ = eval(combine(h, tm(a41, k1_), tm(a43, k3_)));
    k5_ = eval(combine(h, tm(a51, k1_), tm(a53, k3_), tm(a54, k4_)));
    k6_ = eval(combine(h, tm(a61, k1_), tm(a64, k4_), tm(a65, k5_)));
    k7_ = eval(combine(h, tm(a71, k1_), tm(a74, k4_), tm(a75, k5_), tm(a76, k6_)));
    k8_ = eval(combine(h, tm(a81, k1_), tm(a84, k4_), tm(a85, k5_), tm(a86, k6_), tm(a87, k7_)));
    k9_ = eval(combine(h, tm(a91, k1_), tm(a94, k4_), tm(a95, k5_), tm(a96, k6_), tm(a97, k7_), tm(a98, k8_)));
    k10_ = eval(combine(h, tm(a101, k1_), tm(a104, k4_), tm(a105, k5_), tm(a106, k6_), tm(a107, k7_),
                        tm(a108, k8_), tm(a109, k9_)));
    k11_ = eval(combine(h, tm(a111, k1_), tm(a114, k4_), tm(a115, k5_), tm(a116, k6_), tm(a117, k7_),
                        tm(a118, k8_), tm(a119, k9_), tm(a1110, k10_)));
    k12_ = eval(combine(h, tm(a121, k1_), tm(a124, k4_), tm(a125, k5_), tm(a126, k6_), tm(a127, k7_),
                        tm(a128, k8_), tm(a129, k9_), tm(a1210, k10_), tm(a1211, k11_)));
    for (std::size_t i = 0; i < N; ++i) {
      slope_[i] = b1 * k1_[i] + b6 * k6_[i] + b7 * k7_[i] + b8 * k8_[i] + b9 * k9_[i] + b10 * k10_[i] +
                  b11 * k11_[i] + b12 * k12_[i];
      y_new_[i] = y_[i] + h * slope_[i];
    }
  }

  /// Hairer's blend of the 5th- and 3rd-order estimators, scaled by the step.
  double error_estimate() const {
    using namespace dop853;
    double err = 0.0, err2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = cfg_.atol + cfg_.rtol * std::max(std::abs(y_[i]), std::abs(y_new_[i]));
      const double e3 = (slope_[i] - bhh1 * k1_[i] - bhh2 * k9_[i] - bhh3 * k12_[i]) / sk;
      const double e5 = (er1 * k1_[i] + er6 * k6_[i] + er7 * k7_[i] + er8 * k8_[i] + er9 * k9_[i] +
                         er10 * k10_[i] + er11 * k11_[i] + er12 * k12_[i]) /
                        sk;
      err2 += e3 * e3;
      err += e5 * e5;
    }
    const double deno = err + 0.01 * err2;
    return std::abs(h_) * err * std::sqrt(1.0 / (deno <= 0.0 ? N : deno * N));
  }

  void dense_output(const Vec<N>& k_new) {
    using namespace dop853;
    const double h = h_;
    auto& rc = dense_.rc;
    for (std::size_t i = 0; i < N; ++i) {
      rc[0][i] = y_[i];
      const double ydiff = y_new_[i] - y_[i];
      rc[1][i] = ydiff;
      const double bspl = h * k1_[i] - ydiff;
      rc[2][i] = bspl;
      rc[3][i] = ydiff - h * k_new[i] - bspl;
      rc[4][i] = d41 * k1_[i] + d46 * k6_[i] + d47 * k7_[i] + d48 * k8_[i] + d49 * k9_[i] + d410 * k10_[i] +
                 d411 * k11_[i] + d412 * k12_[i];
      rc[5][i] = d51 * k1_[i] + d56 * k6_[i] + d57 * k7_[i] + d58 * k8_[i] + d59 * k9_[i] + d510 * k10_[i] +
                 d511 * k11_[i] + d512 * k12_[i];
      rc[6][i] = d61 * k1_[i] + d66 * k6_[i] + d67 * k7_[i] + d68 * k8_[i] + d69 * k9_[i] + d610 * k10_[i] +
                 d611 * k11_[i] + d612 * k12_[i];
      rc[7][i] = d71 * k1_[i] + d76 * k6_[i] + d77 * k7_[i] + d78 * k8_[i] + d79 * k9_[i] + d710 * k10_[i] +
                 d711 * k11_[i] + d712 * k12_[i];
    }
    const Vec<N> k14 = eval(combine(h, tm(a141, k1_), tm(a147, k7_), tm(a148, k8_), tm(a149, k9_),
                                    tm(a1410, k10_), tm(a1411, k11_), tm(a1412, k12_), tm(a1413, k_new)));
    const Vec<N> k15 = eval(combine(h, tm(a151, k1_), tm(a156, k6_), tm(a157, k7_), tm(a158, k8_),
                                    tm(a1511, k11_), tm(a1512, k12_), tm(a1513, k_new), tm(a1514, k14)));
    const Vec<N> k16 = eval(combine(h, tm(a161, k1_), tm(a166, k6_), tm(a167, k7_), tm(a168, k8_),
                                    tm(a169, k9_), tm(a1613, k_new), tm(a1614, k14), tm(a1615, k15)));
    for (std::size_t i = 0; i < N; ++i) {
      rc[4][i] = h * (rc[4][i] + d413 * k_new[i] + d414 * k14[i] + d415 * k15[i] + d416 * k16[i]);
      rc[5][i] = h * (rc[5][i] + d513 * k_new[i] + d514 * k14[i] + d515 * k15[i] + d516 * k16[i]);
      rc[6][i] = h * (rc[6][i] + d613 * k_new[i] + d614 * k14[i] + d615 * k15[i] + d616 * k16[i]);
      rc[7][i] = h * (rc[7][i] + d713 * k_new[i] + d714 * k14[i] + d715 * k15[i] + d716 * k16[i]);
    }
    dense_.t0 = t_;
    dense_.h = h;
  }

  double initial_step() {
    const double span = t_end_ - t_;
    const double hmax = std::min(span, cfg_.max_step);
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = cfg_.atol + cfg_.rtol * std::abs(y_[i]);
      dnf += (k1_[i] / sk) * (k1_[i] / sk);
      dny += (y_[i] / sk) * (y_[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, hmax);
    Vec<N> y1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h * k1_[i];
    const Vec<N> k2 = eval(y1);
    double der2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double v = (k2[i] - k1_[i]) / (cfg_.atol + cfg_.rtol * std::abs(y_[i]));
      der2 += v * v;
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.125);
    double out = std::min({100.0 * h, h1, hmax});
    if (!(out > 0.0) || !std::isfinite(out)) out = std::min(1e-6, hmax);
    return out;
  }

  F f_;
  IntegratorConfig cfg_;
  double t_;
  double t_end_;
  double h_ = 0.0;
  Vec<N> y_;
  Vec<N> y_new_{}, slope_{};
  Vec<N> k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{}, k8_{}, k9_{}, k10_{}, k11_{}, k12_{};
  DenseStep<N> dense_;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
  std::size_t evaluations_ = 0;
};

template <std::size_t N>
struct Trajectory {
  std::vector<double> t;
  std::vector<Vec<N>> y;
};

/// Accepted-step samples of the solution on [t0, t_end], plus `per_step - 1` dense points inside each step.
template <std::size_t N, class F>
Trajectory<N> integrate(F f, const Vec<N>& y0, double t0, double t_end, const IntegratorConfig& cfg = {},
                        int per_step = 1) {
  Dop853<N, F> stepper(std::move(f), t0, y0, t_end, cfg);
  Trajectory<N> out;
  out.t.push_back(t0);
  out.y.push_back(y0);
  while (!stepper.done()) {
    const auto& d = stepper.step();
    for (int k = 1; k < per_step; ++k) {
      const double t = d.t0 + d.h * k / per_step;
      out.t.push_back(t);
      out.y.push_back(d(t));
    }
    out.t.push_back(stepper.t());
    out.y.push_back(stepper.y());
  }
  return out;
}

/// Visits every accepted step's dense output; the visitor returns false to stop early.
template <std::size_t N, class F, class Visitor>
Vec<N> integrate_visit(F f, const Vec<N>& y0, double t0, double t_end, const IntegratorConfig& cfg, Visitor&& visit) {
  Dop853<N, F> stepper(std::move(f), t0, y0, t_end, cfg);
  while (!stepper.done()) {
    const auto& d = stepper.step();
    if (!visit(d)) break;
  }
  return stepper.y();
}

}  // namespace eulertop
