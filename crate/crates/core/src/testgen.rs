//! Formula generators shared by the unit and property tests.

use alloc::vec::Vec;

use proptest::prelude::*;
use rand::Rng;

use crate::syntax::{Formula, LanguageTag};

fn unary(lang: LanguageTag) -> &'static [u8] {
    match lang {
        LanguageTag::PL => &[0],
        LanguageTag::MD => &[0, 1, 2],
        _ => &[0],
    }
}

fn binary(lang: LanguageTag) -> &'static [u8] {
    match lang {
        LanguageTag::CN | LanguageTag::Mixed => &[0, 1, 2, 3, 4],
        _ => &[0, 1, 2],
    }
}

fn build_unary(op: u8, a: Formula) -> Formula {
    match op {
        0 => Formula::neg(a),
        1 => Formula::boxed(a),
        _ => Formula::dia(a),
    }
}

fn build_binary(op: u8, a: Formula, b: Formula) -> Formula {
    match op {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        2 => Formula::imp(a, b),
        3 => Formula::would(a, b),
        _ => Formula::might(a, b),
    }
}

/// Uniform-ish random formula of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, lang: LanguageTag, depth: usize, atoms: u32) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return Formula::atom(rng.gen_range(0..atoms));
    }
    let un = unary(lang);
    let bin = binary(lang);
    let k = rng.gen_range(0..un.len() + bin.len());
    if k < un.len() {
        build_unary(un[k], random_formula(rng, lang, depth - 1, atoms))
    } else {
        let a = random_formula(rng, lang, depth - 1, atoms);
        let b = random_formula(rng, lang, depth - 1, atoms);
        build_binary(bin[k - un.len()], a, b)
    }
}

/// Proptest strategy over formulas of `lang` up to `depth`.
pub fn formula(lang: LanguageTag, depth: u32, atoms: u32) -> BoxedStrategy<Formula> {
    let leaf = (0..atoms).prop_map(Formula::atom);
    let un: Vec<u8> = unary(lang).to_vec();
    let bin: Vec<u8> = binary(lang).to_vec();
    leaf.prop_recursive(depth, 64, 2, move |inner| {
        let un = un.clone();
        let bin = bin.clone();
        prop_oneof![
            (proptest::sample::select(un), inner.clone()).prop_map(|(op, a)| build_unary(op, a)),
            (proptest::sample::select(bin), inner.clone(), inner)
                .prop_map(|(op, a, b)| build_binary(op, a, b)),
        ]
    })
    .boxed()
}
