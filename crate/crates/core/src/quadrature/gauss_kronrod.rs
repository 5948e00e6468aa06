use super::QuadValue;

/// Kronrod abscissae of the 21-point rule on [-1, 1], positive half.
/// Odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct RuleEstimate<V> {
    pub value: V,
    pub error: f64,
}

/// One application of the 21-point Gauss–Kronrod pair on [a, b].
///
/// Endpoints are never evaluated. The error follows the QUADPACK heuristic
/// `resasc * min(1, (200 |K - G| / resasc)^1.5)` with a round-off floor.
pub(crate) fn qk21<V, F, E>(f: &mut F, a: f64, b: f64) -> Result<RuleEstimate<V>, E>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V, E>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut fv1 = [V::default(); 10];
    let mut fv2 = [V::default(); 10];

    let f_center = f(center)?;
    let mut gauss = V::default();
    let mut kronrod = f_center * WGK[10];
    let mut res_abs = WGK[10] * f_center.magnitude();

    for j in 0..5 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let lo = f(center - dx)?;
        let hi = f(center + dx)?;
        fv1[jtw] = lo;
        fv2[jtw] = hi;
        let sum = lo + hi;
        gauss = gauss + sum * WG[j];
        kronrod = kronrod + sum * WGK[jtw];
        res_abs += WGK[jtw] * (lo.magnitude() + hi.magnitude());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let lo = f(center - dx)?;
        let hi = f(center + dx)?;
        fv1[jtwm1] = lo;
        fv2[jtwm1] = hi;
        kronrod = kronrod + (lo + hi) * WGK[jtwm1];
        res_abs += WGK[jtwm1] * (lo.magnitude() + hi.magnitude());
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (f_center - mean).magnitude();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }

    let value = kronrod * half;
    let raw = ((kronrod - gauss) * half).magnitude();
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();

    let mut error = raw;
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }

    Ok(RuleEstimate { value, error })
}
