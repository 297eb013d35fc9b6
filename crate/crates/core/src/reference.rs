//! Published reference values, kept verbatim as strings so that comparisons
//! go through the same parsers as user input.
//!
//! Every table is indexed by the critical point `s`. Exact entries are
//! `num/den` strings carrying the row's power of π separately.

use crate::exact::{parse_rational, ExactRational, FactoredRational, PiExact};

/// Constants `(C′₀, C″₀, C₁, C₂, C₃, C₄)`, each times `π^{2s}`.
pub const C_TABLE: [(i64, [&str; 6]); 10] = [
    (-8, ["43867/7182", "0", "2", "131071/65536", "258280328/129140163", "17179738111/8589934592"]),
    (-6, ["35/2", "0", "2", "8191/4096", "3188648/1594323", "67100671/33554432"]),
    (-4, ["65/6", "0", "2", "511/256", "39368/19683", "261631/131072"]),
    (-2, ["11/3", "0", "2", "31/16", "488/243", "991/512"]),
    (0, ["3/2", "0", "2", "1", "8/3", "1/2"]),
    (1, ["0", "1/4", "2", "-2", "8", "-10"]),
    (3, ["0", "1/480", "2", "-62", "488", "-2110"]),
    (5, ["0", "31/1451520", "2", "-1022", "39368", "-525310"]),
    (7, ["0", "5461/24908083200", "2", "-16382", "3188648", "-134234110"]),
    (9, ["0", "3202291/1422749712384000", "2", "-262142", "258280328", "-34360000510"]),
];
/// Projection coefficients `A₁ … A₄`, times `π^{2s}`.
pub const A_TABLE: [(i64, [&str; 4]); 10] = [
    (-8, ["88931/14364", "157008449/14364", "39586640915/3591", "24277850760593/14364"]),
    (-6, ["71/1224", "8387/306", "447871/34", "131485894/153"]),
    (-4, ["1/6528", "173/3672", "5103/544", "9380/17"]),
    (-2, ["1/3144960", "1/8568", "23801/4455360", "11015/41769"]),
    (0, ["1/784143360", "23/49008960", "4997/196035840", "421/2042040"]),
    (1, ["1/5292967680", "53/1323241920", "27/5445440", "-23/33081048"]),
    (3, ["199/1270312243200", "49/5671036800", "2059/3207859200", "-10529/4962157200"]),
    (5, ["19/65330343936", "1277/285820254720", "8167/63515612160", "-6631/10508097600"]),
    (7, ["286703/400148356608000", "28267/10003708915200", "633/15247232000", "-8745697/6252318072000"]),
    (9, ["4803437/2134124568576000", "4737913/2134124568576000", "20552747/533531142144000", "-7037087527/2134124568576000"]),
];
/// `K₁, K₂`, times `π^{2s}`.
pub const K_TABLE: [(i64, [&str; 2]); 10] = [
    (-8, ["-435883731901/495673344", "3045934023523439/1177224192"]),
    (-6, ["-217211831/585169920", "100968174943/73146240"]),
    (-4, ["-255571/1404407808", "156430715/175550976"]),
    (-2, ["45173/1369297612800", "74862131/171162201600"]),
    (0, ["36097/56232488632320", "3748999/7029061079040"]),
    (1, ["23831/210871832371200", "876017/26358979046400"]),
    (3, ["4553/69773768064000", "-1256/105304870125"]),
    (5, ["424061/3881958732288000", "-1672/55749637125"]),
    (7, ["923549/3483809118720000", "-66896/850539335625"]),
    (9, ["8127882069959/9794709827950215168000", "-304138734083887/1224338728493776896000"]),
];
/// `L(s+10, g₂₀)L(s+9, g₂₀)/⟨g₂₀, g₂₀⟩` as `(s, rational, π power)`.
pub const PAIR_TABLE: [(i64, &str, i64); 10] = [
    (-8, "-479626345744384/1177605", 3),
    (-6, "38107606016/155601", 7),
    (-4, "802883584/1526175", 11),
    (-2, "1965682688/4426469775", 15),
    (0, "1479424/3447969525", 19),
    (1, "2323456/175846445775", 21),
    (3, "8388608/145073317764375", 25),
    (5, "16777216/34367988873684375", 29),
    (7, "2097152/436209089550609375", 33),
    (9, "63842269963/1305893808013068186412500", 37),
];
/// `L(s+11, Δ⊗Δ)/⟨Δ, Δ⟩` as `(s, rational, π power)`.
pub const SYM2_TABLE: [(i64, &str, i64); 10] = [
    (-8, "9437184/35", 3),
    (-6, "-65536/9", 5),
    (-4, "8192/45", 7),
    (-2, "-16384/2205", 9),
    (0, "16384/14175", 11),
    (1, "32768/155925", 13),
    (3, "131072/42567525", 17),
    (5, "65536/1915538625", 21),
    (7, "524288/1465387048125", 25),
    (9, "8388608/2273792236340625", 29),
];
/// Standard L-value rows `(s, factored R_s, π power, printed numeric value)`;
/// the value is `R_s·π^e·⟨Δ,Δ⟩·⟨g₂₀,g₂₀⟩`.
pub const MAIN_TABLE: [(i64, &str, i64, &str); 10] = [
    (-8, "-2^31·17·11411·1207259/(3·5^2·7·11·13·61)", 6, "-903525.807173"),
    (-6, "-2^26·47·791797/(3^6·17·113)", 12, "-14105.832863"),
    (-4, "2^24·392033/(3^5·5^3·7·17·19)", 18, "728.260808"),
    (-2, "-2^26·479903/(3^8·5^3·7^3·13·17·157)", 24, "-24.122802"),
    (0, "2^22·5779/(3^13·5^4·7^3·11·13)", 30, "3.485667"),
    (1, "2^25·2269/(3^14·5^4·7^3·11^2·13·17)", 34, "1.901053"),
    (3, "2^40/(3^16·5^6·7^4·11^3·13^2·17)", 42, "1.156624"),
    (5, "2^40/(3^20·5^8·7^6·11·13^3·17)", 50, "1.029466"),
    (7, "2^40/(3^23·5^10·7^6·11^2·13^2·17^2)", 58, "1.006025"),
    (9, "2^21·9413·6782351/(3^23·5^10·7^8·11^4·13^4·17^2·19·61)", 66, "1.000909"),
];

/// Numerators of the inverse coefficient matrix rows over their common
/// denominators: `K_i = (Σ_j n_ij A_j)/d_i` with `A₁` first.
pub const K_INVERSE: [([i64; 4], i64); 4] = [
    ([8432992, 5928, 152, -13], 22947840),
    ([-311728736, 940056, 24104, 4229], 2868480),
    ([762432, -1368, 16, 3], 2039808),
    ([286144, 456, -16, -1], 1105920),
];

/// The two printed listings of `g₂₀` up to `q⁵`; they disagree on the sign of `a(5)`.
pub const G20_LISTINGS: [[i64; 5]; 2] = [
    [1, 456, 50652, -316352, 2377410],
    [1, 456, 50652, -316352, -2377410],
];

/// `a(1) … a(5)` of the level-2 newforms with U₂-eigenvalue −512 and +512.
pub const NEWFORM_H1: [i64; 5] = [1, -512, -13092, 262144, 6546750];
pub const NEWFORM_H2: [i64; 5] = [1, 512, -53028, 262144, -5556930];

pub const DELTA_NORM: &str = "0.000001035362056205680432094820996804";
/// `⟨g₂₀, g₂₀⟩` obtained with `l = 12, 14, 16`.
pub const G20_NORMS: [(i64, &str); 3] = [
    (12, "0.000008265541531659702744699575969"),
    (14, "0.000008265541531659703390644766954"),
    (16, "0.000008265541531659703069998511729"),
];

/// Fourier coefficients of the genus-3 weight-12 cusp form, keyed by the
/// doubled Gram matrix `2N` (rows `a,b,c;b,d,e;c,e,f`).
pub const THETA_COEFFICIENTS: [(&str, i64); 6] = [
    ("2,1,1;1,2,1;1,1,2", 1),
    ("2,0,0;0,2,0;0,0,2", 164),
    ("6,0,1;0,2,1;1,1,2", 1328),
    ("4,0,0;0,2,0;0,0,2", -1008),
    ("4,2,2;2,4,2;2,2,4", -131776),
    ("4,0,0;0,4,0;0,0,4", -6816512),
];

pub fn parse_pi(s: &str, pi_power: i64) -> PiExact {
    PiExact::with_pi_power(parse_rational(s).expect("reference rational"), pi_power)
}

pub fn c_row(s: i64) -> Option<[PiExact; 6]> {
    C_TABLE
        .iter()
        .find(|r| r.0 == s)
        .map(|r| r.1.map(|x| parse_pi(x, 2 * s)))
}

pub fn a_row(s: i64) -> Option<[PiExact; 4]> {
    A_TABLE
        .iter()
        .find(|r| r.0 == s)
        .map(|r| r.1.map(|x| parse_pi(x, 2 * s)))
}

pub fn k_row(s: i64) -> Option<[PiExact; 2]> {
    K_TABLE
        .iter()
        .find(|r| r.0 == s)
        .map(|r| r.1.map(|x| parse_pi(x, 2 * s)))
}

pub fn pair_value(s: i64) -> Option<PiExact> {
    PAIR_TABLE.iter().find(|r| r.0 == s).map(|r| parse_pi(r.1, r.2))
}

pub fn sym2_value(s: i64) -> Option<PiExact> {
    SYM2_TABLE.iter().find(|r| r.0 == s).map(|r| parse_pi(r.1, r.2))
}

/// Printed main-table entry: exact value (without the norms) and numeric column.
pub fn main_row(s: i64) -> Option<(PiExact, f64)> {
    MAIN_TABLE.iter().find(|r| r.0 == s).map(|r| {
        let q: FactoredRational = r.1.parse().expect("reference factorization");
        (
            PiExact::with_pi_power(q.to_rational(), r.2),
            r.3.parse().expect("reference float"),
        )
    })
}

pub fn k_inverse_row(i: usize) -> [ExactRational; 4] {
    let (nums, den) = K_INVERSE[i];
    nums.map(|n| crate::exact::rat(n, den))
}
