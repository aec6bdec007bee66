// Frozen numerical reference values for the test suites.
// Generated by tests/oracle/gen_reference.py (mpmath 60 dps + sympy
// exact arithmetic + numpy spectral factorization). Do not edit by
// hand; rerun the generator instead.
#pragma once

namespace refvals {

struct XY { double x, y; };

// Bessel J1, mpmath besselj(1, x).
inline constexpr XY kBesselJ1[] = {
    {9.9999999999999995e-7, 4.9999999999993748e-7},
    {0.0010000000000000000, 0.00049999993750000261},
    {0.10000000000000001, 0.049937526036242000},
    {0.50000000000000000, 0.24226845767487389},
    {1.0000000000000000, 0.44005058574493352},
    {2.0000000000000000, 0.57672480775687339},
    {3.0000000000000000, 0.33905895852593646},
    {4.0000000000000000, -0.066043328023549136},
    {5.0000000000000000, -0.32757913759146522},
    {6.0000000000000000, -0.27668385812756561},
    {7.0000000000000000, -0.0046828234823458327},
    {7.9000000000000004, 0.21917939992175120},
    {8.0999999999999996, 0.24760776698159288},
    {9.0000000000000000, 0.24531178657332527},
    {10.000000000000000, 0.043472746168861437},
    {12.000000000000000, -0.22344710449062761},
    {15.000000000000000, 0.20510403861352276},
    {17.899999999999999, -0.18676536891349663},
    {18.100000000000001, -0.18735018270637615},
    {20.000000000000000, 0.066833124175850046},
    {25.000000000000000, -0.12535024958028990},
    {40.000000000000000, 0.12603831803758500},
    {60.000000000000000, 0.046598383758166318},
    {80.000000000000000, -0.056057296675712578},
    {100.00000000000000, -0.077145352014112158},
    {250.00000000000000, -0.043269038410330750},
    {1000.0000000000000, 0.0047283119070895239},
    {5000.0000000000000, -0.0091174057136461595},
    {10000.000000000000, 0.0036474507555295803},
};

// Undamped closed-form kernel J1(2*w0*t)/(w0*t), K=4.0.
inline constexpr XY kChiClosed_g0_K4[] = {
    {0.25000000000000000, 0.88010117148986703},
    {0.50000000000000000, 0.57672480775687339},
    {1.0000000000000000, -0.033021664011774568},
    {2.0000000000000000, 0.058659086713478656},
    {3.0000000000000000, -0.037241184081771269},
    {5.0000000000000000, 0.0066833124175850046},
    {7.5000000000000000, -0.0079167375077748624},
    {10.000000000000000, 0.0063019159018792500},
    {15.000000000000000, 0.0015532794586055439},
    {20.000000000000000, -0.0014014324168928144},
};

// Undamped closed-form kernel J1(2*w0*t)/(w0*t), K=0.2.
inline constexpr XY kChiClosed_g0_K02[] = {
    {0.25000000000000000, 0.99376300727843885},
    {0.50000000000000000, 0.97520746744430407},
    {1.0000000000000000, 0.90327832964720350},
    {2.0000000000000000, 0.64991627862663378},
    {3.0000000000000000, 0.33293537897029140},
    {5.0000000000000000, -0.099930653302113181},
    {7.5000000000000000, -0.027692991143450422},
    {10.000000000000000, 0.056238229463281829},
    {15.000000000000000, 0.0030032700453841354},
    {20.000000000000000, -0.020851865480636330},
};

// gamma=2, K=4.0 kernel inverted with mpmath de Hoog.
inline constexpr XY kChiDehoog_g2_K4[] = {
    {0.25000000000000000, 0.52032017565517328},
    {0.50000000000000000, 0.15095451455984682},
    {1.0000000000000000, -0.090777487484155618},
    {2.0000000000000000, 0.023889512023464459},
    {3.0000000000000000, 0.0024307057396985538},
    {5.0000000000000000, 0.0084543027547222871},
    {7.5000000000000000, -0.0030001514420978207},
    {10.000000000000000, 0.00026216767759353890},
    {15.000000000000000, -0.0015103530121172032},
    {20.000000000000000, -0.00088011605905652637},
};

// gamma=2, K=0.2 kernel inverted with mpmath de Hoog.
inline constexpr XY kChiDehoog_g2_K02[] = {
    {0.25000000000000000, 0.60203065219423370},
    {0.50000000000000000, 0.35479634138946215},
    {1.0000000000000000, 0.10696228554184218},
    {2.0000000000000000, -0.017467774600094497},
    {3.0000000000000000, -0.022503876221222071},
    {5.0000000000000000, 0.00097002450068073633},
    {7.5000000000000000, 0.0034454781909703580},
    {10.000000000000000, -0.0030288211907482777},
    {15.000000000000000, 0.00058460749303021955},
    {20.000000000000000, 0.00085141122964331016},
};

// X(s=1) for gamma=0, omega0=2.
inline constexpr double kChiLaplace_g0_w2_s1 = 0.39038820320220757;
inline constexpr double kTheta_w2_t025 = 3.5204046859594681;

struct FitReference {
  double gamma, K, chi_inf;
  double M[5];
  double n1_B, n1_Sigma;
  double n2_A[2], n2_B[2], n2_Q[4], n2_Sigma[4];
  double n3_A[3], n3_B[3];
  bool n3_uncorrelated;  // true: diagonal-Sigma completion is PSD
  double n3_Q[9], n3_Sigma[9];
};

inline constexpr FitReference kFits[] = {
    {
        2.0000000000000000, 4.0000000000000000, 0.25000000000000000,
        {1.0000000000000000, -2.0000000000000000, 0.0, 8.0000000000000000, 0.0},
        -4.0000000000000000, 8.0000000000000000,
        {1.0000000000000000, 2.0000000000000000}, {-4.0000000000000000, -8.0000000000000000},
        {16.000000000000000, 2.0000000000000000, 2.0000000000000000, 1.0000000000000000}, {32.000000000000000, 0.0, 0.0, 4.0000000000000000},
        {1.0000000000000000, 2.0000000000000000, 4.0000000000000000}, {-4.0000000000000000, -12.000000000000000, -16.000000000000000},
        false,
        {18.806709914565111, 9.3725830020305239, 4.0000000000000160, 9.3725830020305239, 5.1824524043683651, 2.0000000000000062, 4.0000000000000160, 2.0000000000000062, 1.0000000000000016},
        {128.00000000000051, 61.193290085435180, 22.627416997969565, 61.193290085435180, 29.254833995939101, 10.817547595631664, 22.627416997969565, 10.817547595631664, 4.0000000000000000},
    },
    {
        2.0000000000000000, 0.20000000000000000, 0.40862800118422159,
        {1.0000000000000000, -2.0000000000000000, 3.8000000000000000, -7.2000000000000000, 13.680000000000000},
        -2.4472135954999579, 4.8944271909999159,
        {1.0000000000000000, 0.44721359549995794}, {-2.4472135954999579, -1.0944271909999159},
        {2.1888543819998318, 0.44721359549995793, 0.44721359549995793, 1.0000000000000000}, {0.97888543819998319, 0.0, 0.0, 4.0000000000000000},
        {1.0000000000000000, 0.44721359549995794, 0.20000000000000000}, {-2.4472135954999579, -1.2944271909999159, -0.48944271909999159},
        false,
        {0.042020983450899115, 0.093951344292427810, 0.20000000000000046, 0.093951344292427810, 0.21921666118403549, 0.44721359549995848, 0.20000000000000046, 0.44721359549995848, 1.0000000000000002},
        {0.19577708763999707, 0.43574989294906813, 0.88493409390755662, 0.43574989294906813, 0.96986818781511219, 1.9696377208157974, 0.88493409390755662, 1.9696377208157974, 4.0000000000000000},
    },
    {
        0.0, 4.0000000000000000, 0.50000000000000000,
        {1.0000000000000000, 0.0, -4.0000000000000000, 0.0, 32.000000000000000},
        -2.0000000000000000, 4.0000000000000000,
        {1.0000000000000000, 2.0000000000000000}, {-2.0000000000000000, -4.0000000000000000},
        {8.0000000000000000, 2.0000000000000000, 2.0000000000000000, 1.0000000000000000}, {16.000000000000000, 0.0, 0.0, 0.0},
        {1.0000000000000000, 2.0000000000000000, 4.0000000000000000}, {-2.0000000000000000, -8.0000000000000000, -8.0000000000000000},
        true,
        {48.000000000000000, 16.000000000000000, 4.0000000000000000, 16.000000000000000, 8.0000000000000000, 2.0000000000000000, 4.0000000000000000, 2.0000000000000000, 1.0000000000000000},
        {64.000000000000000, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    },
    {
        0.0, 0.20000000000000000, 2.2360679774997897,
        {1.0000000000000000, 0.0, -0.20000000000000000, 0.0, 0.080000000000000000},
        -0.44721359549995794, 0.89442719099991588,
        {1.0000000000000000, 0.44721359549995794}, {-0.44721359549995794, -0.20000000000000000},
        {0.40000000000000002, 0.44721359549995793, 0.44721359549995793, 1.0000000000000000}, {0.17888543819998318, 0.0, 0.0, 0.0},
        {1.0000000000000000, 0.44721359549995794, 0.20000000000000000}, {-0.44721359549995794, -0.40000000000000000, -0.089442719099991588},
        true,
        {0.12000000000000000, 0.17888543819998318, 0.20000000000000001, 0.17888543819998318, 0.40000000000000002, 0.44721359549995793, 0.20000000000000001, 0.44721359549995793, 1.0000000000000000},
        {0.035777087639996638, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    },
};

}  // namespace refvals
