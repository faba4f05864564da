//! Finitely presented small categories: objects, generating arrows and
//! relations between parallel paths.
//!
//! Paths list arrows in diagrammatic order (first arrow applied first).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{shape, AlgebraError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub dst: usize,
}

/// A composable word of generating arrows starting at `start`; the empty
/// word is the identity of `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn identity(obj: usize) -> Self {
        Path { start: obj, arrows: Vec::new() }
    }

    pub fn single(cat: &FinPresCat, arrow: usize) -> Self {
        Path { start: cat.arrows[arrow].src, arrows: vec![arrow] }
    }

    /// `arrow` repeated `times` times (must be an endomorphism when `times > 1`).
    pub fn power(cat: &FinPresCat, arrow: usize, times: usize) -> Self {
        Path { start: cat.arrows[arrow].src, arrows: vec![arrow; times] }
    }

    pub fn is_identity(&self) -> bool {
        self.arrows.is_empty()
    }

    /// End object, or `None` if the word is not composable.
    pub fn end(&self, cat: &FinPresCat) -> Option<usize> {
        let mut at = self.start;
        for &a in &self.arrows {
            let arrow = cat.arrows.get(a)?;
            if arrow.src != at {
                return None;
            }
            at = arrow.dst;
        }
        (at < cat.objects.len()).then_some(at)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path { start: self.start, arrows }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Path,
    pub rhs: Path,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinPresCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl FinPresCat {
    /// Validates label uniqueness, arrow endpoints and that both sides of
    /// every relation are composable and parallel.
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Result<Self> {
        let cat = FinPresCat { objects, arrows, relations };
        let mut seen = BTreeSet::new();
        for o in &cat.objects {
            if !seen.insert(o.as_str()) {
                return Err(AlgebraError::InvalidInput(format!("duplicate object label {o:?}")));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &cat.arrows {
            if !seen.insert(a.label.as_str()) {
                return Err(AlgebraError::InvalidInput(format!("duplicate arrow label {:?}", a.label)));
            }
            if a.src >= cat.objects.len() || a.dst >= cat.objects.len() {
                return Err(shape(format!("arrow {:?} has an endpoint out of range", a.label)));
            }
        }
        for (i, r) in cat.relations.iter().enumerate() {
            let (Some(l), Some(rr)) = (r.lhs.end(&cat), r.rhs.end(&cat)) else {
                return Err(AlgebraError::InvalidInput(format!("relation {i} is not composable")));
            };
            if r.lhs.start != r.rhs.start || l != rr {
                return Err(AlgebraError::InvalidInput(format!("relation {i} is not between parallel paths")));
            }
        }
        Ok(cat)
    }

    /// The final category `e`: one object, no arrows.
    pub fn terminal() -> Self {
        FinPresCat { objects: vec!["*".into()], arrows: Vec::new(), relations: Vec::new() }
    }

    /// `[1] = {0 → 1}`.
    pub fn arrow_category() -> Self {
        FinPresCat {
            objects: vec!["0".into(), "1".into()],
            arrows: vec![Arrow { label: "a".into(), src: 0, dst: 1 }],
            relations: Vec::new(),
        }
    }

    /// `Λⁿ` presented by one object, loops `t1..tn` and the commutation
    /// relations `tᵢtⱼ = tⱼtᵢ` for `i < j`.
    pub fn make_loop(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::InvalidInput("loop count must be at least 1; use the terminal category".into()));
        }
        let arrows = (1..=n).map(|i| Arrow { label: format!("t{i}"), src: 0, dst: 0 }).collect();
        let mut relations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                relations.push(Relation {
                    lhs: Path { start: 0, arrows: vec![i, j] },
                    rhs: Path { start: 0, arrows: vec![j, i] },
                });
            }
        }
        Ok(FinPresCat { objects: vec!["*".into()], arrows, relations })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Whether this is a one-object presentation of `Λⁿ` as built by
    /// [`FinPresCat::make_loop`], up to labels; returns `n`.
    pub fn loop_rank(&self) -> Option<usize> {
        let n = self.arrows.len();
        let canonical = FinPresCat::make_loop(n).ok()?;
        (self.objects.len() == 1 && self.relations == canonical.relations).then_some(n)
    }

    /// Product presentation: objects are pairs, generators are `g × id` and
    /// `id × h`, relations are the imported relations of both factors plus
    /// the interchange squares `(g.b)(a'.h) = (a.h)(g.b')`.
    ///
    /// Object `(a, b)` has index `a·|D| + b`; the arrows `g.b` come first
    /// (index `g·|D| + b`), followed by the arrows `a.h`.
    pub fn product(c: &FinPresCat, d: &FinPresCat) -> FinPresCat {
        let (nc, nd) = (c.objects.len(), d.objects.len());
        let obj = |a: usize, b: usize| a * nd + b;
        let left = |g: usize, b: usize| g * nd + b;
        let offset = c.arrows.len() * nd;
        let right = |a: usize, h: usize| offset + a * d.arrows.len() + h;

        let mut objects = Vec::with_capacity(nc * nd);
        for a in &c.objects {
            for b in &d.objects {
                objects.push(format!("{a}.{b}"));
            }
        }
        let mut arrows = Vec::new();
        for g in &c.arrows {
            for (b, bl) in d.objects.iter().enumerate() {
                arrows.push(Arrow { label: format!("{}.{bl}", g.label), src: obj(g.src, b), dst: obj(g.dst, b) });
            }
        }
        for (a, al) in c.objects.iter().enumerate() {
            for h in &d.arrows {
                arrows.push(Arrow { label: format!("{al}.{}", h.label), src: obj(a, h.src), dst: obj(a, h.dst) });
            }
        }
        let mut relations = Vec::new();
        for r in &c.relations {
            for b in 0..nd {
                let lift = |p: &Path| Path { start: obj(p.start, b), arrows: p.arrows.iter().map(|&g| left(g, b)).collect() };
                relations.push(Relation { lhs: lift(&r.lhs), rhs: lift(&r.rhs) });
            }
        }
        for a in 0..nc {
            for r in &d.relations {
                let lift = |p: &Path| Path { start: obj(a, p.start), arrows: p.arrows.iter().map(|&h| right(a, h)).collect() };
                relations.push(Relation { lhs: lift(&r.lhs), rhs: lift(&r.rhs) });
            }
        }
        for (gi, g) in c.arrows.iter().enumerate() {
            for (hi, h) in d.arrows.iter().enumerate() {
                relations.push(Relation {
                    lhs: Path { start: obj(g.src, h.src), arrows: vec![left(gi, h.src), right(g.dst, hi)] },
                    rhs: Path { start: obj(g.src, h.src), arrows: vec![right(g.src, hi), left(gi, h.dst)] },
                });
            }
        }
        FinPresCat { objects, arrows, relations }
    }

    /// Label-free form: objects and arrows renumbered in label order, each
    /// relation stored with its sides sorted, relations as a sorted set.
    pub fn normal_form(&self) -> NormalizedPresentation {
        let mut obj_order: Vec<usize> = (0..self.objects.len()).collect();
        obj_order.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut arr_order: Vec<usize> = (0..self.arrows.len()).collect();
        arr_order.sort_by(|&a, &b| self.arrows[a].label.cmp(&self.arrows[b].label));
        let obj_map = inverse_permutation(&obj_order);
        let arr_map = inverse_permutation(&arr_order);
        self.relabeled(&obj_map, &arr_map)
    }

    fn relabeled(&self, obj_map: &[usize], arr_map: &[usize]) -> NormalizedPresentation {
        let mut arrows = vec![(0, 0); self.arrows.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            arrows[arr_map[i]] = (obj_map[a.src], obj_map[a.dst]);
        }
        let map_path = |p: &Path| Path { start: obj_map[p.start], arrows: p.arrows.iter().map(|&a| arr_map[a]).collect() };
        let relations: BTreeSet<(Path, Path)> = self
            .relations
            .iter()
            .map(|r| {
                let (l, rr) = (map_path(&r.lhs), map_path(&r.rhs));
                if l <= rr {
                    (l, rr)
                } else {
                    (rr, l)
                }
            })
            .filter(|(l, r)| l != r)
            .collect();
        NormalizedPresentation { objects: self.objects.len(), arrows, relations }
    }

    /// Searches for a relabeling of objects and arrows identifying the two
    /// presentations (relations compared as sets of word pairs).
    pub fn is_isomorphic_presentation(&self, other: &FinPresCat) -> bool {
        if self.objects.len() != other.objects.len()
            || self.arrows.len() != other.arrows.len()
            || self.normal_form().relations.len() != other.normal_form().relations.len()
        {
            return false;
        }
        if self.normal_form() == other.normal_form() {
            return true;
        }
        let target = other.normal_form_identity();
        let mut obj_map = vec![usize::MAX; self.objects.len()];
        let mut used = vec![false; self.objects.len()];
        self.search_objects(0, &mut obj_map, &mut used, &target)
    }

    fn normal_form_identity(&self) -> NormalizedPresentation {
        let ids: Vec<usize> = (0..self.objects.len()).collect();
        let aids: Vec<usize> = (0..self.arrows.len()).collect();
        self.relabeled(&ids, &aids)
    }

    fn search_objects(&self, k: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, target: &NormalizedPresentation) -> bool {
        if k == map.len() {
            let mut amap = vec![usize::MAX; self.arrows.len()];
            let mut aused = vec![false; self.arrows.len()];
            return self.search_arrows(0, map, &mut amap, &mut aused, target);
        }
        for t in 0..map.len() {
            if !used[t] {
                used[t] = true;
                map[k] = t;
                if self.search_objects(k + 1, map, used, target) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }

    fn search_arrows(
        &self,
        k: usize,
        omap: &[usize],
        amap: &mut Vec<usize>,
        used: &mut Vec<bool>,
        target: &NormalizedPresentation,
    ) -> bool {
        if k == amap.len() {
            return self.relabeled(omap, amap) == *target;
        }
        let a = &self.arrows[k];
        let want = (omap[a.src], omap[a.dst]);
        for t in 0..amap.len() {
            if !used[t] && target.arrows[t] == want {
                used[t] = true;
                amap[k] = t;
                if self.search_arrows(k + 1, omap, amap, used, target) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }
}

fn inverse_permutation(order: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        inv[old] = new;
    }
    inv
}

/// Label-free presentation data used for equality up to relabeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedPresentation {
    pub objects: usize,
    pub arrows: Vec<(usize, usize)>,
    pub relations: BTreeSet<(Path, Path)>,
}

/// A functor between presentations, given on objects and generating arrows.
///
/// Relations are not checked symbolically; they are checked on every diagram
/// the functor is applied to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatFunctor {
    src: FinPresCat,
    dst: FinPresCat,
    obj_map: Vec<usize>,
    arrow_map: Vec<Path>,
}

impl CatFunctor {
    pub fn new(src: FinPresCat, dst: FinPresCat, obj_map: Vec<usize>, arrow_map: Vec<Path>) -> Result<Self> {
        if obj_map.len() != src.objects.len() || arrow_map.len() != src.arrows.len() {
            return Err(shape("functor data does not cover the source presentation"));
        }
        if obj_map.iter().any(|&o| o >= dst.objects.len()) {
            return Err(shape("object image out of range"));
        }
        for (a, p) in src.arrows.iter().zip(&arrow_map) {
            if p.start != obj_map[a.src] || p.end(&dst) != Some(obj_map[a.dst]) {
                return Err(AlgebraError::InvalidInput(format!(
                    "image of arrow {:?} does not run between the image objects",
                    a.label
                )));
            }
        }
        Ok(CatFunctor { src, dst, obj_map, arrow_map })
    }

    pub fn identity(c: &FinPresCat) -> Self {
        CatFunctor {
            src: c.clone(),
            dst: c.clone(),
            obj_map: (0..c.objects.len()).collect(),
            arrow_map: (0..c.arrows.len()).map(|a| Path::single(c, a)).collect(),
        }
    }

    /// `Λ → Λ` sending the loop to its `m`-th power (`m = 0`: the identity word).
    pub fn power_endofunctor(m: usize) -> Self {
        let lambda = FinPresCat::make_loop(1).expect("n = 1");
        let path = Path::power(&lambda, 0, m);
        CatFunctor { src: lambda.clone(), dst: lambda, obj_map: vec![0], arrow_map: vec![path] }
    }

    /// `e → c` picking `obj`.
    pub fn pick_object(c: &FinPresCat, obj: usize) -> Result<Self> {
        CatFunctor::new(FinPresCat::terminal(), c.clone(), vec![obj], Vec::new())
    }

    /// `c × d → c`.
    pub fn projection_left(c: &FinPresCat, d: &FinPresCat) -> Self {
        let p = FinPresCat::product(c, d);
        let nd = d.objects.len();
        let obj_map = (0..p.objects.len()).map(|o| o / nd).collect();
        let mut arrow_map = Vec::new();
        for g in 0..c.arrows.len() {
            for _ in 0..nd {
                arrow_map.push(Path::single(c, g));
            }
        }
        for a in 0..c.objects.len() {
            for _ in &d.arrows {
                arrow_map.push(Path::identity(a));
            }
        }
        CatFunctor { src: p, dst: c.clone(), obj_map, arrow_map }
    }

    /// `c × d → d`.
    pub fn projection_right(c: &FinPresCat, d: &FinPresCat) -> Self {
        let p = FinPresCat::product(c, d);
        let nd = d.objects.len();
        let obj_map = (0..p.objects.len()).map(|o| o % nd).collect();
        let mut arrow_map = Vec::new();
        for _ in &c.arrows {
            for b in 0..nd {
                arrow_map.push(Path::identity(b));
            }
        }
        for _ in 0..c.objects.len() {
            for h in 0..d.arrows.len() {
                arrow_map.push(Path::single(d, h));
            }
        }
        CatFunctor { src: p, dst: d.clone(), obj_map, arrow_map }
    }

    pub fn src(&self) -> &FinPresCat {
        &self.src
    }

    pub fn dst(&self) -> &FinPresCat {
        &self.dst
    }

    pub fn object_image(&self, o: usize) -> usize {
        self.obj_map[o]
    }

    pub fn arrow_image(&self, a: usize) -> &Path {
        &self.arrow_map[a]
    }

    pub fn map_path(&self, p: &Path) -> Path {
        let mut out = Path::identity(self.obj_map[p.start]);
        for &a in &p.arrows {
            out = out.then(&self.arrow_map[a]);
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CatFunctor) -> Result<CatFunctor> {
        if first.dst != self.src {
            return Err(shape("functors are not composable"));
        }
        Ok(CatFunctor {
            src: first.src.clone(),
            dst: self.dst.clone(),
            obj_map: first.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            arrow_map: first.arrow_map.iter().map(|p| self.map_path(p)).collect(),
        })
    }
}

/// `α: u → v`, one component path `u(i) → v(i)` per source object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatNatTransformation {
    u: CatFunctor,
    v: CatFunctor,
    components: Vec<Path>,
}

impl CatNatTransformation {
    pub fn new(u: CatFunctor, v: CatFunctor, components: Vec<Path>) -> Result<Self> {
        if u.src != v.src || u.dst != v.dst {
            return Err(shape("natural transformations need parallel functors"));
        }
        if components.len() != u.src.objects.len() {
            return Err(shape("one component per source object required"));
        }
        for (i, c) in components.iter().enumerate() {
            if c.start != u.obj_map[i] || c.end(&u.dst) != Some(v.obj_map[i]) {
                return Err(AlgebraError::InvalidInput(format!("component {i} does not run from u({i}) to v({i})")));
            }
        }
        Ok(CatNatTransformation { u, v, components })
    }

    pub fn identity(u: &CatFunctor) -> Self {
        let components = u.obj_map.iter().map(|&o| Path::identity(o)).collect();
        CatNatTransformation { u: u.clone(), v: u.clone(), components }
    }

    pub fn source(&self) -> &CatFunctor {
        &self.u
    }

    pub fn target(&self) -> &CatFunctor {
        &self.v
    }

    pub fn components(&self) -> &[Path] {
        &self.components
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn loop_presentations() {
        let l1 = FinPresCat::make_loop(1).unwrap();
        assert_eq!((l1.objects().len(), l1.arrows().len(), l1.relations().len()), (1, 1, 0));
        let l2 = FinPresCat::make_loop(2).unwrap();
        assert_eq!((l2.objects().len(), l2.arrows().len(), l2.relations().len()), (1, 2, 1));
        let l3 = FinPresCat::make_loop(3).unwrap();
        assert_eq!((l3.arrows().len(), l3.relations().len()), (3, 3));
        assert!(FinPresCat::make_loop(0).is_err());
        assert_eq!(l3.loop_rank(), Some(3));
        assert_eq!(FinPresCat::arrow_category().loop_rank(), None);
    }

    #[test]
    fn terminal_is_a_unit() {
        let l = FinPresCat::make_loop(2).unwrap();
        let p = FinPresCat::product(&FinPresCat::terminal(), &l);
        assert_eq!(p.objects(), &["*.*".to_string()]);
        assert!(p.is_isomorphic_presentation(&l));
        let q = FinPresCat::product(&l, &FinPresCat::terminal());
        assert!(q.is_isomorphic_presentation(&l));
    }

    #[test]
    fn product_of_loops_is_a_double_loop() {
        let l = FinPresCat::make_loop(1).unwrap();
        let p = FinPresCat::product(&l, &l);
        let l2 = FinPresCat::make_loop(2).unwrap();
        assert_eq!(p.normal_form(), l2.normal_form());
        assert!(p.is_isomorphic_presentation(&l2));
    }

    #[test]
    fn loop_times_arrow() {
        let p = FinPresCat::product(&FinPresCat::make_loop(1).unwrap(), &FinPresCat::arrow_category());
        assert_eq!(p.objects(), &["*.0".to_string(), "*.1".to_string()]);
        let labels: Vec<&str> = p.arrows().iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, vec!["t1.0", "t1.1", "*.a"]);
        assert_eq!(p.relations().len(), 1);
        let r = &p.relations()[0];
        // t1 at 0 then a, equals a then t1 at 1
        assert_eq!(r.lhs.arrows, vec![0, 2]);
        assert_eq!(r.rhs.arrows, vec![2, 1]);
    }

    #[test]
    fn loops_add_under_products() {
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let p = FinPresCat::product(&FinPresCat::make_loop(a).unwrap(), &FinPresCat::make_loop(b).unwrap());
            assert!(p.is_isomorphic_presentation(&FinPresCat::make_loop(a + b).unwrap()), "{a}+{b}");
        }
        assert!(!FinPresCat::make_loop(2).unwrap().is_isomorphic_presentation(&FinPresCat::make_loop(3).unwrap()));
    }

    #[test]
    fn product_is_associative_up_to_labels() {
        let (a, b, c) = (
            FinPresCat::make_loop(1).unwrap(),
            FinPresCat::arrow_category(),
            FinPresCat::make_loop(2).unwrap(),
        );
        let left = FinPresCat::product(&FinPresCat::product(&a, &b), &c);
        let right = FinPresCat::product(&a, &FinPresCat::product(&b, &c));
        assert_eq!(left.normal_form(), right.normal_form());
    }

    #[test]
    fn power_endofunctors() {
        let one = CatFunctor::power_endofunctor(1);
        assert_eq!(one, CatFunctor::identity(&FinPresCat::make_loop(1).unwrap()));
        assert!(CatFunctor::power_endofunctor(0).arrow_image(0).is_identity());
        assert_eq!(CatFunctor::power_endofunctor(2).arrow_image(0).arrows, vec![0, 0]);
        for (m, k) in [(2, 3), (0, 4), (3, 1)] {
            let composite = CatFunctor::power_endofunctor(m).compose(&CatFunctor::power_endofunctor(k)).unwrap();
            assert_eq!(composite.arrow_image(0), CatFunctor::power_endofunctor(m * k).arrow_image(0));
        }
    }

    #[test]
    fn invalid_presentations_are_rejected() {
        let objs = vec!["a".to_string(), "b".to_string()];
        let arrows = vec![Arrow { label: "f".into(), src: 0, dst: 1 }];
        let bad = Relation { lhs: Path { start: 0, arrows: vec![0] }, rhs: Path::identity(0) };
        assert!(FinPresCat::new(objs.clone(), arrows.clone(), vec![bad]).is_err());
        let dup = vec![arrows[0].clone(), arrows[0].clone()];
        assert!(FinPresCat::new(objs, dup, vec![]).is_err());
    }

    #[test]
    fn natural_transformation_components_are_checked() {
        let l = FinPresCat::make_loop(1).unwrap();
        let u = CatFunctor::pick_object(&l, 0).unwrap();
        assert!(CatNatTransformation::new(u.clone(), u.clone(), vec![Path::single(&l, 0)]).is_ok());
        assert!(CatNatTransformation::new(u.clone(), u, vec![]).is_err());
    }
}
