//! Paint mixing: five labeled tubes, two containers, a closed discrete
//! pigment table, and the contaminated-container / wrong-label perturbations.
//!
//! The pair table ships as a data asset (`assets/mixing_table.txt`, one
//! `colorA+colorB=result` line per pair) and is closed over the palette:
//! any multiset of base pigments maps to exactly one display color. Ratios
//! are ignored for two-pigment mixes; three or more distinct pigments read
//! as murky.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::core::{ObservationText, World};

const MIXING_TABLE: &str = include_str!("../assets/mixing_table.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseColor {
    Red,
    Yellow,
    Blue,
    White,
    Black,
}

impl BaseColor {
    pub const ALL: [BaseColor; 5] = [
        BaseColor::Red,
        BaseColor::Yellow,
        BaseColor::Blue,
        BaseColor::White,
        BaseColor::Black,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BaseColor::Red => "red",
            BaseColor::Yellow => "yellow",
            BaseColor::Blue => "blue",
            BaseColor::White => "white",
            BaseColor::Black => "black",
        }
    }

    pub fn parse(s: &str) -> Option<BaseColor> {
        BaseColor::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
    }

    fn index(&self) -> usize {
        BaseColor::ALL.iter().position(|c| c == self).unwrap()
    }
}

/// Every color a container can display: the five bases, the ten pair results,
/// and murky for three or more distinct pigments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PaletteColor {
    Base(BaseColor),
    Green,
    Orange,
    Purple,
    Seagreen,
    Pink,
    Gray,
    Brown,
    Skyblue,
    Navy,
    Cream,
    Murky,
}

impl PaletteColor {
    pub fn as_str(&self) -> &'static str {
        match self {
            PaletteColor::Base(b) => b.as_str(),
            PaletteColor::Green => "green",
            PaletteColor::Orange => "orange",
            PaletteColor::Purple => "purple",
            PaletteColor::Seagreen => "seagreen",
            PaletteColor::Pink => "pink",
            PaletteColor::Gray => "gray",
            PaletteColor::Brown => "brown",
            PaletteColor::Skyblue => "skyblue",
            PaletteColor::Navy => "navy",
            PaletteColor::Cream => "cream",
            PaletteColor::Murky => "murky",
        }
    }

    fn parse_derived(s: &str) -> Option<PaletteColor> {
        match s.trim() {
            "green" => Some(PaletteColor::Green),
            "orange" => Some(PaletteColor::Orange),
            "purple" => Some(PaletteColor::Purple),
            "seagreen" => Some(PaletteColor::Seagreen),
            "pink" => Some(PaletteColor::Pink),
            "gray" => Some(PaletteColor::Gray),
            "brown" => Some(PaletteColor::Brown),
            "skyblue" => Some(PaletteColor::Skyblue),
            "navy" => Some(PaletteColor::Navy),
            "cream" => Some(PaletteColor::Cream),
            _ => None,
        }
    }
}

fn pair_table() -> &'static [(BaseColor, BaseColor, PaletteColor)] {
    static TABLE: OnceLock<Vec<(BaseColor, BaseColor, PaletteColor)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        MIXING_TABLE
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let (pair, result) = line.split_once('=').expect("mixing table line");
                let (a, b) = pair.split_once('+').expect("mixing table pair");
                (
                    BaseColor::parse(a).expect("mixing table color"),
                    BaseColor::parse(b).expect("mixing table color"),
                    PaletteColor::parse_derived(result).expect("mixing table result"),
                )
            })
            .collect()
    })
}

/// Result of mixing two distinct base pigments, in either order.
pub fn pair_mix(a: BaseColor, b: BaseColor) -> Option<PaletteColor> {
    pair_table()
        .iter()
        .find(|(x, y, _)| (*x == a && *y == b) || (*x == b && *y == a))
        .map(|(_, _, r)| *r)
}

/// Mixes a multiset of (pigment, ml). Empty contents display no color; one
/// pigment displays itself; two distinct pigments follow the pair table in
/// any ratio; three or more are murky.
pub fn mix(contents: &[(BaseColor, u32)]) -> (Option<PaletteColor>, u32) {
    let mut ml = [0u32; 5];
    for (color, volume) in contents {
        ml[color.index()] += volume;
    }
    let total: u32 = ml.iter().sum();
    let present: Vec<BaseColor> = BaseColor::ALL
        .into_iter()
        .filter(|c| ml[c.index()] > 0)
        .collect();
    let display = match present.len() {
        0 => None,
        1 => Some(PaletteColor::Base(present[0])),
        2 => Some(pair_mix(present[0], present[1]).expect("pair table is total")),
        _ => Some(PaletteColor::Murky),
    };
    (display, total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainerId {
    A,
    B,
}

impl ContainerId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ContainerId::A => "A",
            ContainerId::B => "B",
        }
    }

    fn parse(s: &str) -> Option<ContainerId> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(ContainerId::A),
            "B" => Some(ContainerId::B),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorVariant {
    Basic,
    Contaminated,
    WrongLabel,
}

/// Per-base milliliters in one container.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Container {
    ml: [u32; 5],
}

impl Container {
    fn add(&mut self, color: BaseColor) {
        self.ml[color.index()] += 1;
    }

    fn clear(&mut self) {
        self.ml = [0; 5];
    }

    fn contents(&self) -> Vec<(BaseColor, u32)> {
        BaseColor::ALL
            .into_iter()
            .filter(|c| self.ml[c.index()] > 0)
            .map(|c| (c, self.ml[c.index()]))
            .collect()
    }

    fn display(&self) -> (Option<PaletteColor>, u32) {
        mix(&self.contents())
    }
}

pub struct ColorWorld {
    /// True pigment dispensed for each label index (identity unless wronglabel).
    label_map: [BaseColor; 5],
    containers: [Container; 2],
    target: (PaletteColor, u32),
}

impl ColorWorld {
    /// The target is a seeded pair-derived color at 2 ml, drawn identically
    /// for all three variants of the same seed.
    pub fn from_seed(variant: ColorVariant, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = rng.gen_range(0..5);
        let second = (first + rng.gen_range(1..5)) % 5;
        let target_color = pair_mix(BaseColor::ALL[first], BaseColor::ALL[second])
            .expect("pair table is total");
        let mut world = ColorWorld {
            label_map: BaseColor::ALL,
            containers: [Container::default(), Container::default()],
            target: (target_color, 2),
        };
        match variant {
            ColorVariant::Basic => {}
            ColorVariant::Contaminated => {
                let container = rng.gen_range(0..2);
                let color = BaseColor::ALL[rng.gen_range(0..5)];
                world.containers[container].add(color);
            }
            ColorVariant::WrongLabel => {
                let mut map = BaseColor::ALL;
                loop {
                    map.shuffle(&mut rng);
                    if map.iter().zip(BaseColor::ALL.iter()).all(|(a, b)| a != b) {
                        break;
                    }
                }
                world.label_map = map;
            }
        }
        world
    }

    pub fn label_map(&self) -> &[BaseColor; 5] {
        &self.label_map
    }

    pub fn target(&self) -> (PaletteColor, u32) {
        self.target
    }

    /// True pigment behind a label.
    pub fn content_of_label(&self, label: BaseColor) -> BaseColor {
        self.label_map[label.index()]
    }

    pub fn add(&mut self, label: BaseColor, container: ContainerId) -> ObservationText {
        let true_color = self.content_of_label(label);
        self.container_mut(container).add(true_color);
        format!(
            "You add 1 ml of paste from {} tube into container {}.",
            label.as_str(),
            container.as_str()
        )
    }

    pub fn check(&self, container: ContainerId) -> ObservationText {
        match self.container(container).display() {
            (Some(color), ml) => format!(
                "Container {} has {} ml of {} paint.",
                container.as_str(),
                ml,
                color.as_str()
            ),
            (None, _) => format!("Container {} is empty.", container.as_str()),
        }
    }

    pub fn clean(&mut self, container: ContainerId) -> ObservationText {
        self.container_mut(container).clear();
        format!("You clean container {}.", container.as_str())
    }

    fn container(&self, id: ContainerId) -> &Container {
        &self.containers[match id {
            ContainerId::A => 0,
            ContainerId::B => 1,
        }]
    }

    fn container_mut(&mut self, id: ContainerId) -> &mut Container {
        &mut self.containers[match id {
            ContainerId::A => 0,
            ContainerId::B => 1,
        }]
    }
}

impl World for ColorWorld {
    fn describe(&self) -> String {
        format!(
            "The painting environment has five tubes of paste labeled red, yellow, blue, white, and black, and two containers A and B.\n\
             The goal is to {}.\n\
             \n\
             The available actions are:\n{}",
            self.goal_text(),
            self.action_menu()
        )
    }

    fn goal_text(&self) -> String {
        format!(
            "create {} ml of {} paint in a container (A or B)",
            self.target.1,
            self.target.0.as_str()
        )
    }

    fn action_menu(&self) -> String {
        "1) Add <tube> to <container>: Add 1 ml of paste from the labeled tube into container A or B.\n\
         2) Check <container>: Check the contents of container A or B.\n\
         3) Clean <container>: Empty container A or B.\n\
         4) Help: View the available action options."
            .to_string()
    }

    fn state_summary(&self) -> String {
        format!("{} {}", self.check(ContainerId::A), self.check(ContainerId::B))
    }

    fn apply(&mut self, command: &str) -> Result<ObservationText, ()> {
        let tokens: Vec<&str> = command.split_whitespace().collect();
        match tokens.as_slice() {
            [kw, label, to, container]
                if kw.eq_ignore_ascii_case("add") && to.eq_ignore_ascii_case("to") =>
            {
                let label = BaseColor::parse(label).ok_or(())?;
                let container = ContainerId::parse(container).ok_or(())?;
                Ok(self.add(label, container))
            }
            [kw, container] if kw.eq_ignore_ascii_case("check") => {
                let container = ContainerId::parse(container).ok_or(())?;
                Ok(self.check(container))
            }
            [kw, container] if kw.eq_ignore_ascii_case("clean") => {
                let container = ContainerId::parse(container).ok_or(())?;
                Ok(self.clean(container))
            }
            _ => Err(()),
        }
    }

    fn succeeded(&self) -> bool {
        [ContainerId::A, ContainerId::B].iter().any(|&id| {
            let (display, ml) = self.container(id).display();
            display == Some(self.target.0) && ml == self.target.1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basic(seed: u64) -> ColorWorld {
        ColorWorld::from_seed(ColorVariant::Basic, seed)
    }

    #[test]
    fn yellow_black_makes_seagreen() {
        let (display, ml) = mix(&[(BaseColor::Yellow, 1), (BaseColor::Black, 1)]);
        assert_eq!(display, Some(PaletteColor::Seagreen));
        assert_eq!(ml, 2);
    }

    #[test]
    fn single_pigment_displays_itself() {
        let (display, ml) = mix(&[(BaseColor::Red, 2)]);
        assert_eq!(display, Some(PaletteColor::Base(BaseColor::Red)));
        assert_eq!(ml, 2);
    }

    #[test]
    fn three_pigments_are_murky() {
        let (display, _) = mix(&[(BaseColor::Red, 1), (BaseColor::Yellow, 1), (BaseColor::Blue, 1)]);
        assert_eq!(display, Some(PaletteColor::Murky));
    }

    #[test]
    fn ratios_do_not_change_pair_results() {
        let a = mix(&[(BaseColor::Yellow, 1), (BaseColor::Blue, 1)]).0;
        let b = mix(&[(BaseColor::Yellow, 2), (BaseColor::Blue, 1)]).0;
        assert_eq!(a, Some(PaletteColor::Green));
        assert_eq!(a, b);
    }

    #[test]
    fn pair_table_is_total_over_all_ten_pairs() {
        let mut count = 0;
        for (i, a) in BaseColor::ALL.into_iter().enumerate() {
            for b in BaseColor::ALL.into_iter().skip(i + 1) {
                assert!(pair_mix(a, b).is_some(), "{a:?}+{b:?}");
                count += 1;
            }
        }
        assert_eq!(count, 10);
    }

    #[test]
    fn closure_over_multisets_up_to_six_units() {
        // Every multiset of <= 6 units maps to exactly one palette color.
        let mut checked = 0;
        for r in 0..=6u32 {
            for y in 0..=6 - r {
                for b in 0..=6 - r - y {
                    for w in 0..=6 - r - y - b {
                        for k in 0..=6 - r - y - b - w {
                            let contents = [
                                (BaseColor::Red, r),
                                (BaseColor::Yellow, y),
                                (BaseColor::Blue, b),
                                (BaseColor::White, w),
                                (BaseColor::Black, k),
                            ]
                            .into_iter()
                            .filter(|(_, ml)| *ml > 0)
                            .collect::<Vec<_>>();
                            let (display, total) = mix(&contents);
                            assert_eq!(display.is_none(), total == 0);
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(checked, 462);
    }

    #[test]
    fn add_names_label_not_content() {
        let mut world = ColorWorld {
            label_map: [
                BaseColor::White, // "red" tube holds white
                BaseColor::Yellow,
                BaseColor::Red, // "blue" tube holds red
                BaseColor::Black,
                BaseColor::Blue,
            ],
            containers: [Container::default(), Container::default()],
            target: (PaletteColor::Base(BaseColor::Red), 2),
        };
        assert_eq!(
            world.add(BaseColor::Blue, ContainerId::B),
            "You add 1 ml of paste from blue tube into container B."
        );
        world.add(BaseColor::Blue, ContainerId::B);
        assert_eq!(world.check(ContainerId::B), "Container B has 2 ml of red paint.");
        assert!(world.succeeded());
    }

    #[test]
    fn check_and_clean_observations() {
        let mut world = basic(1);
        assert_eq!(world.check(ContainerId::A), "Container A is empty.");
        world.add(BaseColor::Yellow, ContainerId::A);
        world.add(BaseColor::Black, ContainerId::A);
        assert_eq!(world.check(ContainerId::A), "Container A has 2 ml of seagreen paint.");
        assert_eq!(world.clean(ContainerId::A), "You clean container A.");
        assert_eq!(world.check(ContainerId::A), "Container A is empty.");
        // Cleaning an empty container is idempotent.
        assert_eq!(world.clean(ContainerId::A), "You clean container A.");
        assert_eq!(world.check(ContainerId::A), "Container A is empty.");
    }

    #[test]
    fn contaminated_prefill_is_recoverable() {
        let world = ColorWorld::from_seed(ColorVariant::Contaminated, 3);
        let prefilled: Vec<ContainerId> = [ContainerId::A, ContainerId::B]
            .into_iter()
            .filter(|&c| world.container(c).display().1 > 0)
            .collect();
        assert_eq!(prefilled.len(), 1);
        let mut world = world;
        let dirty = prefilled[0];
        assert_eq!(world.container(dirty).display().1, 1);
        world.clean(dirty);
        assert_eq!(world.check(dirty), format!("Container {} is empty.", dirty.as_str()));
    }

    #[test]
    fn wronglabel_is_a_derangement() {
        for seed in 0..50 {
            let world = ColorWorld::from_seed(ColorVariant::WrongLabel, seed);
            for (i, label) in BaseColor::ALL.into_iter().enumerate() {
                assert_ne!(world.label_map[i], label, "seed {seed}");
            }
        }
    }

    #[test]
    fn unknown_labels_and_containers_rejected() {
        let mut world = basic(0);
        assert!(world.apply("Add cyan to A").is_err());
        assert!(world.apply("Add red to C").is_err());
        assert!(world.apply("Check Q").is_err());
        assert!(world.apply("add red to a").is_ok());
    }

    #[test]
    fn volume_tracks_adds_and_cleans() {
        let mut world = basic(2);
        for i in 1..=4 {
            world.add(BaseColor::Red, ContainerId::B);
            assert_eq!(world.container(ContainerId::B).display().1, i);
        }
        world.clean(ContainerId::B);
        assert_eq!(world.container(ContainerId::B).display().1, 0);
    }

    #[test]
    fn seeded_targets_are_derived_and_deterministic() {
        for seed in 0..30 {
            let a = ColorWorld::from_seed(ColorVariant::Basic, seed);
            let b = ColorWorld::from_seed(ColorVariant::Basic, seed);
            assert_eq!(a.target(), b.target());
            assert!(!matches!(a.target().0, PaletteColor::Base(_) | PaletteColor::Murky));
            assert_eq!(a.target().1, 2);
            // Same target across variants of the same seed.
            let c = ColorWorld::from_seed(ColorVariant::WrongLabel, seed);
            assert_eq!(a.target(), c.target());
        }
    }
}
