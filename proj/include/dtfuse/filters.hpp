#pragma once

#include <array>

// Kingsbury filter tables. Level 1 uses the near-symmetric biorthogonal
// (13,19)-tap pair ("near_sym_b"); coarser levels use the 14-tap Q-shift
// pair ("qshift_b"), where tree b is the time reverse of tree a.
namespace dtfuse::filters {

// Analysis lowpass / highpass and synthesis lowpass / highpass, level 1.
inline constexpr std::array<double, 13> h0o{
    -0.0017578125, 0.0, 0.022265625, -0.046875, -0.0482421875, 0.296875, 0.55546875,
    0.296875, -0.0482421875, -0.046875, 0.022265625, 0.0, -0.0017578125};

inline constexpr std::array<double, 19> h1o{
    -7.062639508928571e-05, 0.0, 0.0013419015066964285, -0.0018833705357142855, -0.007156808035714285,
    0.023856026785714284, 0.05564313616071428, -0.05168805803571428, -0.29975760323660716, 0.5594308035714286,
    -0.29975760323660716, -0.05168805803571428, 0.05564313616071428, 0.023856026785714284, -0.007156808035714285,
    -0.0018833705357142855, 0.0013419015066964285, 0.0, -7.062639508928571e-05};

inline constexpr std::array<double, 19> g0o{
    7.062639508928571e-05, 0.0, -0.0013419015066964285, -0.0018833705357142855, 0.007156808035714285,
    0.023856026785714284, -0.05564313616071428, -0.05168805803571428, 0.29975760323660716, 0.5594308035714286,
    0.29975760323660716, -0.05168805803571428, -0.05564313616071428, 0.023856026785714284, 0.007156808035714285,
    -0.0018833705357142855, -0.0013419015066964285, 0.0, 7.062639508928571e-05};

inline constexpr std::array<double, 13> g1o{
    -0.0017578125, -0.0, 0.022265625, 0.046875, -0.0482421875, -0.296875, 0.55546875,
    -0.296875, -0.0482421875, 0.046875, 0.022265625, -0.0, -0.0017578125};

// Q-shift tree a.
inline constexpr std::array<double, 14> h0a{
    0.003253142763653182, -0.00388321199915849, 0.03466034684485349, -0.03887280126882779,
    -0.11720388769911527, 0.27529538466888204, 0.7561456438925225, 0.5688104207121227,
    0.011866092033797, -0.1067118046866654, 0.023825384794920298, 0.01702522388155399,
    -0.005439475937274115, -0.004556895628475491};

inline constexpr std::array<double, 14> h1a{
    -0.004556895628475491, 0.005439475937274115, 0.01702522388155399, -0.023825384794920298,
    -0.1067118046866654, -0.011866092033797, 0.5688104207121227, -0.7561456438925225,
    0.27529538466888204, 0.11720388769911527, -0.03887280126882779, -0.03466034684485349,
    -0.00388321199915849, -0.003253142763653182};

constexpr std::array<double, 14> reversed(const std::array<double, 14>& h) {
  std::array<double, 14> out{};
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = h[h.size() - 1 - i];
  return out;
}

// Tree b and the synthesis filters follow from tree a by time reversal.
inline constexpr std::array<double, 14> h0b = reversed(h0a);
inline constexpr std::array<double, 14> h1b = reversed(h1a);
inline constexpr std::array<double, 14> g0a = h0b;
inline constexpr std::array<double, 14> g0b = h0a;
inline constexpr std::array<double, 14> g1a = h1b;
inline constexpr std::array<double, 14> g1b = h1a;

}  // namespace dtfuse::filters
