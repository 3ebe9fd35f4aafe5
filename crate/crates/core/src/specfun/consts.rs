//! Mathematical constants.

pub const EULER_GAMMA: f64 = 0.5772156649015329;
/// Derivative of the Riemann zeta function at -1.
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.16542114370045094;
pub const LN_2PI: f64 = 1.8378770664093456;
pub const LN_SQRT_2PI: f64 = 0.9189385332046728;
pub const AI0: f64 = 0.3550280538878172;
pub const AIP0: f64 = -0.2588194037928068;
/// Ai(0) as a double-double pair.
pub const AI0_DD: (f64, f64) = (0.3550280538878172, 2.05233632436212e-17);
pub const AIP0_DD: (f64, f64) = (-0.2588194037928068, 2.522243111610832e-17);

/// zeta(k) for k = 0..=40; entries 0 and 1 are unused.
pub const ZETA: [f64; 41] = [
    0.0,
    0.0,
    1.6449340668482264,
    1.2020569031595942,
    1.0823232337111381,
    1.03692775514337,
    1.0173430619844492,
    1.008349277381923,
    1.0040773561979444,
    1.0020083928260821,
    1.000994575127818,
    1.0004941886041194,
    1.000246086553308,
    1.0001227133475785,
    1.0000612481350588,
    1.000030588236307,
    1.0000152822594086,
    1.0000076371976379,
    1.000003817293265,
    1.0000019082127165,
    1.0000009539620338,
    1.0000004769329869,
    1.0000002384505027,
    1.000000119219926,
    1.000000059608189,
    1.0000000298035034,
    1.0000000149015549,
    1.0000000074507118,
    1.000000003725334,
    1.0000000018626598,
    1.0000000009313275,
    1.0000000004656628,
    1.000000000232831,
    1.0000000001164155,
    1.0000000000582077,
    1.0000000000291038,
    1.000000000014552,
    1.000000000007276,
    1.000000000003638,
    1.000000000001819,
    1.0000000000009095,
];

/// Bernoulli numbers B_{2k} for k = 0..=20.
pub const BERNOULLI_EVEN: [f64; 21] = [
    1.0,
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
    -15116315767.092157,
    429614643061.1667,
    -13711655205088.332,
    488332318973593.2,
    -1.9296579341940068e+16,
];
