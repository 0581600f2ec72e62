use std::collections::HashSet;

use crate::permgroup::{Perm, PermError, PermGroup};

/// An isomorphism `a → b` as a map of element indices, found by trying
/// images of the generators of `a` among elements of `b` of equal order.
pub fn find_isomorphism(a: &PermGroup, b: &PermGroup) -> Result<Option<Vec<usize>>, PermError> {
    let (ea, eb) = (a.elements()?, b.elements()?);
    if ea.len() != eb.len() {
        return Ok(None);
    }
    let profile = |e: &[Perm]| {
        let mut v: Vec<usize> = e.iter().map(Perm::order).collect();
        v.sort_unstable();
        v
    };
    if profile(ea) != profile(eb) {
        return Ok(None);
    }
    let gens = a.generators();
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|g| (0..eb.len()).filter(|&j| eb[j].order() == g.order()).collect()).collect();
    let mut choice = vec![0; gens.len()];
    loop {
        let images: Vec<&Perm> = choice.iter().zip(&candidates).map(|(&c, cs)| &eb[cs[c]]).collect();
        if let Some(map) = extend(a, b, &images)? {
            return Ok(Some(map));
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(None);
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn extend(a: &PermGroup, b: &PermGroup, images: &[&Perm]) -> Result<Option<Vec<usize>>, PermError> {
    let ea = a.elements()?;
    let mut map: Vec<Option<usize>> = vec![None; ea.len()];
    map[0] = Some(0);
    for i in 0..ea.len() {
        let Some(mi) = map[i] else { return Ok(None) };
        let base = b.element(mi)?;
        for (g, img) in a.generators().iter().zip(images) {
            let j = a.index_of(&ea[i].compose(g))?.expect("closed under generators");
            let target = b.index_of(&base.compose(img))?.expect("closed under multiplication");
            match map[j] {
                None => map[j] = Some(target),
                Some(t) if t == target => {}
                Some(_) => return Ok(None),
            }
        }
    }
    let map: Vec<usize> = map.into_iter().map(|m| m.expect("all reached")).collect();
    let distinct: HashSet<usize> = map.iter().copied().collect();
    Ok((distinct.len() == map.len()).then_some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::catalog_group;

    #[test]
    fn dihedral_models_agree() {
        let d4 = catalog_group("D4").unwrap();
        let d8 = catalog_group("D8").unwrap();
        let iso = find_isomorphism(&d4, &d8).unwrap().unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(iso[d4.mul(i, j).unwrap()], d8.mul(iso[i], iso[j]).unwrap());
            }
        }
        assert!(find_isomorphism(&d8, &catalog_group("Q8").unwrap()).unwrap().is_none());
        assert!(find_isomorphism(&catalog_group("C4xC2").unwrap(), &d8).unwrap().is_none());
    }
}
