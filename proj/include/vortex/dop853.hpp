#pragma once

// Explicit Dormand-Prince 8(5,3) Runge-Kutta integrator with step-size
// control and seventh-order dense output.
//
// Coefficients follow E. Hairer, S. P. Norsett and G. Wanner, "Solving
// Ordinary Differential Equations I", 2nd ed., Springer (1993), and the
// reference implementation DOP853.F.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>

#include "vortex/errors.hpp"

namespace vortex::ode {

struct Dop853Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  long max_steps = 10'000'000;
  // Upper bound on |h|; infinity means the integration span.
  double max_step = std::numeric_limits<double>::infinity();
  // Consecutive stiffness detections that abort the run.
  int stiff_limit = 15;
};

struct Dop853Stats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
  double smallest_step = 0.0;
  double largest_step = 0.0;
};

namespace dop853_tableau {
// clang-format off
inline constexpr double c2 = 0.526001519587677318785587544488e-01, c3 = 0.789002279381515978178381316732e-01,
    c4 = 0.118350341907227396726757197510e+00, c5 = 0.281649658092772603273242802490e+00,
    c6 = 0.333333333333333333333333333333e+00, c7 = 0.25e+00, c8 = 0.307692307692307692307692307692e+00,
    c9 = 0.651282051282051282051282051282e+00, c10 = 0.6e+00, c11 = 0.857142857142857142857142857142e+00,
    c14 = 0.1e+00, c15 = 0.2e+00, c16 = 0.777777777777777777777777777778e+00;

inline constexpr double b1 = 5.42937341165687622380535766363e-2, b6 = 4.45031289275240888144113950566e0,
    b7 = 1.89151789931450038304281599044e0, b8 = -5.8012039600105847814672114227e0,
    b9 = 3.1116436695781989440891606237e-1, b10 = -1.52160949662516078556178806805e-1,
    b11 = 2.01365400804030348374776537501e-1, b12 = 4.47106157277725905176885569043e-2;

inline constexpr double bhh1 = 0.244094488188976377952755905512e+00, bhh2 = 0.733846688281611857341361741547e+00,
    bhh3 = 0.220588235294117647058823529412e-01;

inline constexpr double er1 = 0.1312004499419488073250102996e-01, er6 = -0.1225156446376204440720569753e+01,
    er7 = -0.4957589496572501915214079952e+00, er8 = 0.1664377182454986536961530415e+01,
    er9 = -0.3503288487499736816886487290e+00, er10 = 0.3341791187130174790297318841e+00,
    er11 = 0.8192320648511571246570742613e-01, er12 = -0.2235530786388629525884427845e-01;

inline constexpr double a21 = 5.26001519587677318785587544488e-2,
    a31 = 1.97250569845378994544595329183e-2, a32 = 5.91751709536136983633785987549e-2,
    a41 = 2.95875854768068491816892993775e-2, a43 = 8.87627564304205475450678981324e-2,
    a51 = 2.41365134159266685502369798665e-1, a53 = -8.84549479328286085344864962717e-1,
    a54 = 9.24834003261792003115737966543e-1,
    a61 = 3.7037037037037037037037037037e-2, a64 = 1.70828608729473871279604482173e-1,
    a65 = 1.25467687566822425016691814123e-1,
    a71 = 3.7109375e-2, a74 = 1.70252211019544039314978060272e-1, a75 = 6.02165389804559606850219397283e-2,
    a76 = -1.7578125e-2,
    a81 = 3.70920001185047927108779319836e-2, a84 = 1.70383925712239993810214054705e-1,
    a85 = 1.07262030446373284651809199168e-1, a86 = -1.53194377486244017527936158236e-2,
    a87 = 8.27378916381402288758473766002e-3,
    a91 = 6.24110958716075717114429577812e-1, a94 = -3.36089262944694129406857109825e0,
    a95 = -8.68219346841726006818189891453e-1, a96 = 2.75920996994467083049415600797e1,
    a97 = 2.01540675504778934086186788979e1, a98 = -4.34898841810699588477366255144e1,
    a101 = 4.77662536438264365890433908527e-1, a104 = -2.48811461997166764192642586468e0,
    a105 = -5.90290826836842996371446475743e-1, a106 = 2.12300514481811942347288949897e1,
    a107 = 1.52792336328824235832596922938e1, a108 = -3.32882109689848629194453265587e1,
    a109 = -2.03312017085086261358222928593e-2,
    a111 = -9.3714243008598732571704021658e-1, a114 = 5.18637242884406370830023853209e0,
    a115 = 1.09143734899672957818500254654e0, a116 = -8.14978701074692612513997267357e0,
    a117 = -1.85200656599969598641566180701e1, a118 = 2.27394870993505042818970056734e1,
    a119 = 2.49360555267965238987089396762e0, a1110 = -3.0467644718982195003823669022e0,
    a121 = 2.27331014751653820792359768449e0, a124 = -1.05344954667372501984066689879e1,
    a125 = -2.00087205822486249909675718444e0, a126 = -1.79589318631187989172765950534e1,
    a127 = 2.79488845294199600508499808837e1, a128 = -2.85899827713502369474065508674e0,
    a129 = -8.87285693353062954433549289258e0, a1210 = 1.23605671757943030647266201528e1,
    a1211 = 6.43392746015763530355970484046e-1;

inline constexpr double a141 = 5.61675022830479523392909219681e-2, a147 = 2.53500210216624811088794765333e-1,
    a148 = -2.46239037470802489917441475441e-1, a149 = -1.24191423263816360469010140626e-1,
    a1410 = 1.5329179827876569731206322685e-1, a1411 = 8.20105229563468988491666602057e-3,
    a1412 = 7.56789766054569976138603589584e-3, a1413 = -8.298e-3,
    a151 = 3.18346481635021405060768473261e-2, a156 = 2.83009096723667755288322961402e-2,
    a157 = 5.35419883074385676223797384372e-2, a158 = -5.49237485713909884646569340306e-2,
    a1511 = -1.08347328697249322858509316994e-4, a1512 = 3.82571090835658412954920192323e-4,
    a1513 = -3.40465008687404560802977114492e-4, a1514 = 1.41312443674632500278074618366e-1,
    a161 = -4.28896301583791923408573538692e-1, a166 = -4.69762141536116384314449447206e0,
    a167 = 7.68342119606259904184240953878e0, a168 = 4.06898981839711007970213554331e0,
    a169 = 3.56727187455281109270669543021e-1, a1613 = -1.39902416515901462129418009734e-3,
    a1614 = 2.9475147891527723389556272149e0, a1615 = -9.15095847217987001081870187138e0;

inline constexpr double d41 = -0.84289382761090128651353491142e+01, d46 = 0.56671495351937776962531783590e+00,
    d47 = -0.30689499459498916912797304727e+01, d48 = 0.23846676565120698287728149680e+01,
    d49 = 0.21170345824450282767155149946e+01, d410 = -0.87139158377797299206789907490e+00,
    d411 = 0.22404374302607882758541771650e+01, d412 = 0.63157877876946881815570249290e+00,
    d413 = -0.88990336451333310820698117400e-01, d414 = 0.18148505520854727256656404962e+02,
    d415 = -0.91946323924783554000451984436e+01, d416 = -0.44360363875948939664310572000e+01;
inline constexpr double d51 = 0.10427508642579134603413151009e+02, d56 = 0.24228349177525818288430175319e+03,
    d57 = 0.16520045171727028198505394887e+03, d58 = -0.37454675472269020279518312152e+03,
    d59 = -0.22113666853125306036270938578e+02, d510 = 0.77334326684722638389603898808e+01,
    d511 = -0.30674084731089398182061213626e+02, d512 = -0.93321305264302278729567221706e+01,
    d513 = 0.15697238121770843886131091075e+02, d514 = -0.31139403219565177677282850411e+02,
    d515 = -0.93529243588444783865713862664e+01, d516 = 0.35816841486394083752465898540e+02;
inline constexpr double d61 = 0.19985053242002433820987653617e+02, d66 = -0.38703730874935176555105901742e+03,
    d67 = -0.18917813819516756882830838328e+03, d68 = 0.52780815920542364900561016686e+03,
    d69 = -0.11573902539959630126141871134e+02, d610 = 0.68812326946963000169666922661e+01,
    d611 = -0.10006050966910838403183860980e+01, d612 = 0.77771377980534432092869265740e+00,
    d613 = -0.27782057523535084065932004339e+01, d614 = -0.60196695231264120758267380846e+02,
    d615 = 0.84320405506677161018159903784e+02, d616 = 0.11992291136182789328035130030e+02;
inline constexpr double d71 = -0.25693933462703749003312586129e+02, d76 = -0.15418974869023643374053993627e+03,
    d77 = -0.23152937917604549567536039109e+03, d78 = 0.35763911791061412378285349910e+03,
    d79 = 0.93405324183624310003907691704e+02, d710 = -0.37458323136451633156875139351e+02,
    d711 = 0.10409964950896230045147246184e+03, d712 = 0.29840293426660503123344363579e+02,
    d713 = -0.43533456590011143754432175058e+02, d714 = 0.96324553959188282948394950600e+02,
    d715 = -0.39177261675615439165231486172e+02, d716 = -0.14972683625798562581422125276e+03;
// clang-format on
}  // namespace dop853_tableau

// Integrates y' = f(t, y) for a fixed-size real state.
//
// `rhs(t, y, dy)` fills dy. `sample_times` must be non-decreasing and start
// at or after t0; integration stops at the last sample time. `observe(index,
// t, y)` is called once per sample, in order. Samples equal to t0 receive
// the initial state, samples on step boundaries receive the step result,
// and interior samples use the dense-output polynomial.
template <std::size_t N>
class Dop853 {
 public:
  using State = std::array<double, N>;

  explicit Dop853(Dop853Options options = {}) : opt_(options) {}

  template <class Rhs, class Observe>
  Dop853Stats solve(Rhs&& rhs, double t0, const State& y0, std::span<const double> sample_times,
                    Observe&& observe) {
    namespace tb = dop853_tableau;
    Dop853Stats stats;
    if (sample_times.empty()) return stats;
    const double t_end = sample_times.back();
    if (sample_times.front() < t0) throw ConfigError("sample times precede the initial time");

    std::size_t next = 0;
    while (next < sample_times.size() && sample_times[next] <= t0) {
      observe(next, sample_times[next], y0);
      ++next;
    }
    if (next == sample_times.size()) return stats;

    double t = t0;
    State y = y0;
    auto eval = [&](double tt, const State& in, State& out) {
      rhs(tt, in, out);
      ++stats.evaluations;
    };

    State k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, knew, stage, ynew, bsum;
    eval(t, y, k1);

    const double span = t_end - t0;
    const double h_max = std::min(span, opt_.max_step);
    if (!(h_max > 0.0)) throw ConfigError("DOP853: max_step must be positive");
    double h = initial_step(eval, t, y, k1, h_max);
    bool reject = false;
    bool last = false;
    int stiff_count = 0, nonstiff_count = 0;
    constexpr double kSafe = 0.9, kFacMin = 1.0 / 3.0, kFacMax = 6.0, kUround = 2.3e-16;
    const double expo = 1.0 / 8.0;

    while (true) {
      if (stats.accepted + stats.rejected > opt_.max_steps)
        throw NumericalError("DOP853: step limit exceeded at t = " + std::to_string(t));
      if (0.1 * std::abs(h) <= std::abs(t) * kUround)
        throw NumericalError("DOP853: step size underflow at t = " + std::to_string(t) +
                             " (problem may be stiff)");
      if (t + 1.01 * h >= t_end) {
        h = t_end - t;
        last = true;
      }

      auto combine = [&](std::initializer_list<std::pair<double, const State*>> terms) {
        for (std::size_t i = 0; i < N; ++i) {
          double acc = 0.0;
          for (const auto& [c, k] : terms) acc += c * (*k)[i];
          stage[i] = y[i] + h * acc;
        }
      };

      combine({{tb::a21, &k1}});
      eval(t + tb::c2 * h, stage, k2);
      combine({{tb::a31, &k1}, {tb::a32, &k2}});
      eval(t + tb::c3 * h, stage, k3);
      combine({{tb::a41, &k1}, {tb::a43, &k3}});
      eval(t + tb::c4 * h, stage, k4);
      combine({{tb::a51, &k1}, {tb::a53, &k3}, {tb::a54, &k4}});
      eval(t + tb::c5 * h, stage, k5);
      combine({{tb::a61, &k1}, {tb::a64, &k4}, {tb::a65, &k5}});
      eval(t + tb::c6 * h, stage, k6);
      combine({{tb::a71, &k1}, {tb::a74, &k4}, {tb::a75, &k5}, {tb::a76, &k6}});
      eval(t + tb::c7 * h, stage, k7);
      combine({{tb::a81, &k1}, {tb::a84, &k4}, {tb::a85, &k5}, {tb::a86, &k6}, {tb::a87, &k7}});
      eval(t + tb::c8 * h, stage, k8);
      combine({{tb::a91, &k1}, {tb::a94, &k4}, {tb::a95, &k5}, {tb::a96, &k6}, {tb::a97, &k7},
               {tb::a98, &k8}});
      eval(t + tb::c9 * h, stage, k9);
      combine({{tb::a101, &k1}, {tb::a104, &k4}, {tb::a105, &k5}, {tb::a106, &k6}, {tb::a107, &k7},
               {tb::a108, &k8}, {tb::a109, &k9}});
      eval(t + tb::c10 * h, stage, k10);
      combine({{tb::a111, &k1}, {tb::a114, &k4}, {tb::a115, &k5}, {tb::a116, &k6}, {tb::a117, &k7},
               {tb::a118, &k8}, {tb::a119, &k9}, {tb::a1110, &k10}});
      eval(t + tb::c11 * h, stage, k11);
      combine({{tb::a121, &k1}, {tb::a124, &k4}, {tb::a125, &k5}, {tb::a126, &k6}, {tb::a127, &k7},
               {tb::a128, &k8}, {tb::a129, &k9}, {tb::a1210, &k10}, {tb::a1211, &k11}});
      const double t_new = last ? t_end : t + h;
      eval(t_new, stage, k12);

      for (std::size_t i = 0; i < N; ++i) {
        bsum[i] = tb::b1 * k1[i] + tb::b6 * k6[i] + tb::b7 * k7[i] + tb::b8 * k8[i] + tb::b9 * k9[i] +
                  tb::b10 * k10[i] + tb::b11 * k11[i] + tb::b12 * k12[i];
        ynew[i] = y[i] + h * bsum[i];
      }

      // Blend of the fifth- and third-order embedded estimates.
      double err5 = 0.0, err3 = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double sk = opt_.atol + opt_.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        const double e3 = (bsum[i] - tb::bhh1 * k1[i] - tb::bhh2 * k9[i] - tb::bhh3 * k12[i]) / sk;
        const double e5 = (tb::er1 * k1[i] + tb::er6 * k6[i] + tb::er7 * k7[i] + tb::er8 * k8[i] +
                           tb::er9 * k9[i] + tb::er10 * k10[i] + tb::er11 * k11[i] + tb::er12 * k12[i]) /
                          sk;
        err3 += e3 * e3;
        err5 += e5 * e5;
      }
      double deno = err5 + 0.01 * err3;
      if (deno <= 0.0) deno = 1.0;
      const double err = std::abs(h) * err5 / std::sqrt(deno * static_cast<double>(N));

      if (!std::isfinite(err)) {
        h *= 0.1;
        reject = true;
        last = false;
        ++stats.rejected;
        continue;
      }

      const double fac11 = std::pow(err, expo);
      const double fac = std::clamp(fac11 / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
      double h_next = h / fac;

      if (err <= 1.0) {
        ++stats.accepted;
        track_step(stats, h);
        eval(t_new, ynew, knew);

        // Stiffness test on the last two stages.
        if (stats.accepted % 4 == 0 || stiff_count > 0) {
          double num = 0.0, den = 0.0;
          for (std::size_t i = 0; i < N; ++i) {
            num += (knew[i] - k12[i]) * (knew[i] - k12[i]);
            den += (ynew[i] - stage[i]) * (ynew[i] - stage[i]);
          }
          if (den > 0.0 && h * h * num > 37.21 * den) {
            nonstiff_count = 0;
            if (++stiff_count >= opt_.stiff_limit)
              throw NumericalError("DOP853: problem appears stiff at t = " + std::to_string(t));
          } else if (++nonstiff_count == 6) {
            stiff_count = 0;
          }
        }

        if (next < sample_times.size() && sample_times[next] < t_new) {
          State rc1, rc2, rc3, rc4, rc5, rc6, rc7, rc8, k14, k15, k16;
          for (std::size_t i = 0; i < N; ++i) {
            rc1[i] = y[i];
            const double ydiff = ynew[i] - y[i];
            rc2[i] = ydiff;
            const double bspl = h * k1[i] - ydiff;
            rc3[i] = bspl;
            rc4[i] = ydiff - h * knew[i] - bspl;
            rc5[i] = tb::d41 * k1[i] + tb::d46 * k6[i] + tb::d47 * k7[i] + tb::d48 * k8[i] +
                     tb::d49 * k9[i] + tb::d410 * k10[i] + tb::d411 * k11[i] + tb::d412 * k12[i];
            rc6[i] = tb::d51 * k1[i] + tb::d56 * k6[i] + tb::d57 * k7[i] + tb::d58 * k8[i] +
                     tb::d59 * k9[i] + tb::d510 * k10[i] + tb::d511 * k11[i] + tb::d512 * k12[i];
            rc7[i] = tb::d61 * k1[i] + tb::d66 * k6[i] + tb::d67 * k7[i] + tb::d68 * k8[i] +
                     tb::d69 * k9[i] + tb::d610 * k10[i] + tb::d611 * k11[i] + tb::d612 * k12[i];
            rc8[i] = tb::d71 * k1[i] + tb::d76 * k6[i] + tb::d77 * k7[i] + tb::d78 * k8[i] +
                     tb::d79 * k9[i] + tb::d710 * k10[i] + tb::d711 * k11[i] + tb::d712 * k12[i];
          }
          combine({{tb::a141, &k1}, {tb::a147, &k7}, {tb::a148, &k8}, {tb::a149, &k9}, {tb::a1410, &k10},
                   {tb::a1411, &k11}, {tb::a1412, &k12}, {tb::a1413, &knew}});
          eval(t + tb::c14 * h, stage, k14);
          combine({{tb::a151, &k1}, {tb::a156, &k6}, {tb::a157, &k7}, {tb::a158, &k8}, {tb::a1511, &k11},
                   {tb::a1512, &k12}, {tb::a1513, &knew}, {tb::a1514, &k14}});
          eval(t + tb::c15 * h, stage, k15);
          combine({{tb::a161, &k1}, {tb::a166, &k6}, {tb::a167, &k7}, {tb::a168, &k8}, {tb::a169, &k9},
                   {tb::a1613, &knew}, {tb::a1614, &k14}, {tb::a1615, &k15}});
          eval(t + tb::c16 * h, stage, k16);
          for (std::size_t i = 0; i < N; ++i) {
            rc5[i] = h * (rc5[i] + tb::d413 * knew[i] + tb::d414 * k14[i] + tb::d415 * k15[i] +
                          tb::d416 * k16[i]);
            rc6[i] = h * (rc6[i] + tb::d513 * knew[i] + tb::d514 * k14[i] + tb::d515 * k15[i] +
                          tb::d516 * k16[i]);
            rc7[i] = h * (rc7[i] + tb::d613 * knew[i] + tb::d614 * k14[i] + tb::d615 * k15[i] +
                          tb::d616 * k16[i]);
            rc8[i] = h * (rc8[i] + tb::d713 * knew[i] + tb::d714 * k14[i] + tb::d715 * k15[i] +
                          tb::d716 * k16[i]);
          }
          while (next < sample_times.size() && sample_times[next] < t_new) {
            const double s = (sample_times[next] - t) / h;
            const double s1 = 1.0 - s;
            State ys;
            for (std::size_t i = 0; i < N; ++i)
              ys[i] = rc1[i] +
                      s * (rc2[i] +
                           s1 * (rc3[i] + s * (rc4[i] + s1 * (rc5[i] + s * (rc6[i] + s1 * (rc7[i] + s * rc8[i]))))));
            observe(next, sample_times[next], ys);
            ++next;
          }
        }

        k1 = knew;
        y = ynew;
        t = t_new;
        while (next < sample_times.size() && (last || sample_times[next] <= t)) {
          observe(next, sample_times[next], y);
          ++next;
        }
        if (last || next == sample_times.size()) return stats;

        if (std::abs(h_next) > h_max) h_next = h_max;
        if (reject) h_next = std::min(h_next, h);
        reject = false;
      } else {
        h_next = h / std::min(1.0 / kFacMin, fac11 / kSafe);
        reject = true;
        if (stats.accepted >= 1) ++stats.rejected;
        last = false;
      }
      h = h_next;
    }
  }

 private:
  static void track_step(Dop853Stats& stats, double h) {
    if (stats.accepted == 1 || h < stats.smallest_step) stats.smallest_step = h;
    if (h > stats.largest_step) stats.largest_step = h;
  }

  template <class Eval>
  double initial_step(Eval& eval, double t, const State& y, const State& f0, double h_max) const {
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opt_.atol + opt_.rtol * std::abs(y[i]);
      dnf += (f0[i] / sk) * (f0[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, h_max);

    State probe, f1;
    for (std::size_t i = 0; i < N; ++i) probe[i] = y[i] + h * f0[i];
    eval(t + h, probe, f1);
    double der2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double d = (f1[i] - f0[i]) / (opt_.atol + opt_.rtol * std::abs(y[i]));
      der2 += d * d;
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 0.125);
    return std::min({100.0 * std::abs(h), h1, h_max});
  }

  Dop853Options opt_;
};

}  // namespace vortex::ode
