//! Nested Gauss–Kronrod rules, selectable by name.
//!
//! Tables use the QUADPACK layout: Kronrod abscissae on the half interval in
//! descending order ending with the centre; odd positions are the embedded
//! Gauss nodes.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub trait QuadratureRule: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;
    fn kronrod_abscissae(&self) -> &'static [f64];
    fn kronrod_weights(&self) -> &'static [f64];
    fn gauss_weights(&self) -> &'static [f64];

    /// Number of integrand evaluations per application.
    fn points(&self) -> usize {
        2 * self.kronrod_abscissae().len() - 1
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GaussKronrod15;

#[derive(Debug, Clone, Copy, Default)]
pub struct GaussKronrod21;

#[allow(clippy::excessive_precision)]
const GK15_X: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const GK15_WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const GK15_WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const GK21_X: [f64; 11] = [
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
#[allow(clippy::excessive_precision)]
const GK21_WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const GK21_WK: [f64; 11] = [
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

impl QuadratureRule for GaussKronrod15 {
    fn name(&self) -> &'static str {
        "gk15"
    }
    fn kronrod_abscissae(&self) -> &'static [f64] {
        &GK15_X
    }
    fn kronrod_weights(&self) -> &'static [f64] {
        &GK15_WK
    }
    fn gauss_weights(&self) -> &'static [f64] {
        &GK15_WG
    }
}

impl QuadratureRule for GaussKronrod21 {
    fn name(&self) -> &'static str {
        "gk21"
    }
    fn kronrod_abscissae(&self) -> &'static [f64] {
        &GK21_X
    }
    fn kronrod_weights(&self) -> &'static [f64] {
        &GK21_WK
    }
    fn gauss_weights(&self) -> &'static [f64] {
        &GK21_WG
    }
}

/// One application of a rule on `[a, b]`.
pub(crate) struct Estimate<const N: usize> {
    pub kronrod: [Complex64; N],
    pub error: f64,
    /// Kronrod estimate of ∫|f|, used for the rounding floor.
    pub abs_sum: f64,
}

pub(crate) fn apply<const N: usize>(
    rule: &dyn QuadratureRule,
    f: &mut dyn FnMut(f64) -> Result<[Complex64; N]>,
    a: f64,
    b: f64,
) -> Result<Estimate<N>> {
    let xk = rule.kronrod_abscissae();
    let wk = rule.kronrod_weights();
    let wg = rule.gauss_weights();
    let n = xk.len();
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let zero = [Complex64::default(); N];
    let mut kron = zero;
    let mut gauss = zero;
    let mut abs_sum = 0.0;

    let fc = f(center)?;
    for k in 0..N {
        kron[k] += fc[k] * wk[n - 1];
        abs_sum += wk[n - 1] * fc[k].norm();
        if n % 2 == 0 {
            gauss[k] += fc[k] * wg[n / 2 - 1];
        }
    }
    for j in 0..n - 1 {
        let dx = half * xk[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        for k in 0..N {
            let sum = f1[k] + f2[k];
            kron[k] += sum * wk[j];
            abs_sum += wk[j] * (f1[k].norm() + f2[k].norm());
            if j % 2 == 1 {
                gauss[k] += sum * wg[j / 2];
            }
        }
    }
    let mut error = 0.0_f64;
    for k in 0..N {
        kron[k] *= half;
        gauss[k] *= half;
        error = error.max((kron[k] - gauss[k]).norm());
    }
    Ok(Estimate { kronrod: kron, error, abs_sum: abs_sum * half.abs() })
}

/// Named quadrature rules; `gk15` is the default.
#[derive(Debug, Clone)]
pub struct QuadratureRegistry {
    rules: Vec<Arc<dyn QuadratureRule>>,
}

impl Default for QuadratureRegistry {
    fn default() -> Self {
        let mut reg = QuadratureRegistry { rules: Vec::new() };
        reg.register(Arc::new(GaussKronrod15));
        reg.register(Arc::new(GaussKronrod21));
        reg
    }
}

impl QuadratureRegistry {
    /// Adds a rule, replacing any rule already registered under its name.
    pub fn register(&mut self, rule: Arc<dyn QuadratureRule>) {
        self.rules.retain(|r| r.name() != rule.name());
        self.rules.push(rule);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn QuadratureRule>> {
        self.rules
            .iter()
            .find(|r| r.name() == name)
            .cloned()
            .ok_or_else(|| Error::UnknownName { kind: "quadrature rule", name: name.to_string() })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.rules.iter().map(|r| r.name()).collect()
    }
}
