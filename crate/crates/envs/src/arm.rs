//! Planar two-joint robot arm: analytic forward/inverse kinematics, swept-path
//! collision checks against circular obstacles, and the constant actuation
//! offset perturbation.
//!
//! Link lengths are fixed at L1 = 2 and L2 = 1 so the canonical rest pose puts
//! joint 1 at (2, 0) and the gripper at (3, 0). Reachable gripper positions
//! form the annulus 1 <= |p| <= 3.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::core::{fmt2, ObservationText, World};

pub const L1: f64 = 2.0;
pub const L2: f64 = 1.0;
pub const REACH_MIN: f64 = L1 - L2;
pub const REACH_MAX: f64 = L1 + L2;
pub const REACH_TOLERANCE: f64 = 0.05;

/// Joint-space interpolation resolution for path collision checks. At this
/// geometry the largest inter-sample gripper motion stays below the 0.5
/// obstacle radius.
const PATH_STEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(&self, other: Vec2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Arm pose as the two joint angles, radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmConfig {
    pub theta0: f64,
    pub theta1: f64,
}

impl ArmConfig {
    pub const INITIAL: ArmConfig = ArmConfig {
        theta0: 0.0,
        theta1: 0.0,
    };

    pub fn joint1(&self) -> Vec2 {
        forward_kinematics(self.theta0, self.theta1).0
    }

    pub fn gripper(&self) -> Vec2 {
        forward_kinematics(self.theta0, self.theta1).1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Obstacle {
    pub center: Vec2,
    pub radius: f64,
}

impl Obstacle {
    pub const fn new(x: f64, y: f64, radius: f64) -> Self {
        Obstacle {
            center: Vec2::new(x, y),
            radius,
        }
    }
}

/// One arm task instance: goal position, obstacle field, and actuation offset
/// ((0, 0) in the basic variant).
#[derive(Debug, Clone, PartialEq)]
pub struct ArmTask {
    pub target: Vec2,
    pub obstacles: Vec<Obstacle>,
    pub offset: Vec2,
    pub reach_tolerance: f64,
}

#[derive(Debug, Error)]
#[error("target at distance {distance:.4} is outside the reach annulus [{min}, {max}]")]
pub struct Unreachable {
    pub distance: f64,
    pub min: f64,
    pub max: f64,
}

/// joint1 = L1 (cos t0, sin t0); gripper = joint1 + L2 (cos(t0+t1), sin(t0+t1)).
pub fn forward_kinematics(theta0: f64, theta1: f64) -> (Vec2, Vec2) {
    let joint1 = Vec2::new(L1 * theta0.cos(), L1 * theta0.sin());
    let tip = theta0 + theta1;
    let gripper = Vec2::new(joint1.x + L2 * tip.cos(), joint1.y + L2 * tip.sin());
    (joint1, gripper)
}

fn wrap_angle(a: f64) -> f64 {
    let mut a = a.rem_euclid(std::f64::consts::TAU);
    if a > std::f64::consts::PI {
        a -= std::f64::consts::TAU;
    }
    a
}

/// Analytic two-link IK. Of the two elbow branches, returns the one closer to
/// `current` in wrapped joint-space distance; exact ties go to the positive
/// theta1 branch (elbow below the chord for targets on the +x axis).
pub fn inverse_kinematics(target: Vec2, current: &ArmConfig) -> Result<ArmConfig, Unreachable> {
    let r = target.norm();
    if !(REACH_MIN..=REACH_MAX).contains(&r) {
        return Err(Unreachable {
            distance: r,
            min: REACH_MIN,
            max: REACH_MAX,
        });
    }
    let cos_t1 = ((r * r - L1 * L1 - L2 * L2) / (2.0 * L1 * L2)).clamp(-1.0, 1.0);
    let t1_mag = cos_t1.acos();
    let base = target.y.atan2(target.x);
    let candidate = |theta1: f64| -> ArmConfig {
        let theta0 = base - (L2 * theta1.sin()).atan2(L1 + L2 * theta1.cos());
        ArmConfig {
            theta0: wrap_angle(theta0),
            theta1: wrap_angle(theta1),
        }
    };
    let pos = candidate(t1_mag);
    let neg = candidate(-t1_mag);
    let cost = |c: &ArmConfig| {
        wrap_angle(c.theta0 - current.theta0).abs() + wrap_angle(c.theta1 - current.theta1).abs()
    };
    if cost(&neg) + 1e-12 < cost(&pos) {
        Ok(neg)
    } else {
        Ok(pos)
    }
}

/// Euclidean distance from segment pq to the obstacle center; a collision is
/// any distance strictly below the radius.
pub fn segment_circle_min_distance(p: Vec2, q: Vec2, c: &Obstacle) -> f64 {
    let dx = q.x - p.x;
    let dy = q.y - p.y;
    let len_sq = dx * dx + dy * dy;
    if len_sq == 0.0 {
        return p.dist(c.center);
    }
    let t = (((c.center.x - p.x) * dx + (c.center.y - p.y) * dy) / len_sq).clamp(0.0, 1.0);
    Vec2::new(p.x + t * dx, p.y + t * dy).dist(c.center)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathCheck {
    Clear,
    Colliding,
}

/// Interpolates both joint angles linearly (shortest angular direction) in 64
/// steps and checks both links against every obstacle at all 65 samples.
pub fn path_collision_check(from: &ArmConfig, to: &ArmConfig, obstacles: &[Obstacle]) -> PathCheck {
    let d0 = wrap_angle(to.theta0 - from.theta0);
    let d1 = wrap_angle(to.theta1 - from.theta1);
    for i in 0..=PATH_STEPS {
        let t = i as f64 / PATH_STEPS as f64;
        let (joint1, gripper) = forward_kinematics(from.theta0 + t * d0, from.theta1 + t * d1);
        for obstacle in obstacles {
            if segment_circle_min_distance(Vec2::new(0.0, 0.0), joint1, obstacle)
                < obstacle.radius
                || segment_circle_min_distance(joint1, gripper, obstacle) < obstacle.radius
            {
                return PathCheck::Colliding;
            }
        }
    }
    PathCheck::Clear
}

/// The arm environment's hidden state.
pub struct ArmWorld {
    task: ArmTask,
    config: ArmConfig,
}

pub const SUCCESS_OBSERVATION: &str = "Success!";
pub const OUT_OF_REACH_OBSERVATION: &str = "Failed! Target is out of reach. Move aborted.";
pub const COLLISION_OBSERVATION: &str = "Failed! Collision detected along the path. Move aborted.";

/// The ten-obstacle ring used by the default task instance.
pub fn default_obstacle_ring() -> Vec<Obstacle> {
    [
        (0.0, 3.0),
        (2.0, 2.0),
        (-2.0, 2.0),
        (2.5, 1.0),
        (-2.5, 1.0),
        (0.0, -3.0),
        (2.0, -2.0),
        (-2.0, -2.0),
        (2.5, -1.0),
        (-2.5, -1.0),
    ]
    .iter()
    .map(|&(x, y)| Obstacle::new(x, y, 0.5))
    .collect()
}

/// Offset magnitudes the perturbed variant draws from, per axis.
pub const OFFSET_CHOICES: [f64; 6] = [-1.0, -0.5, -0.1, 0.1, 0.5, 1.0];

impl ArmWorld {
    pub fn new(task: ArmTask) -> Self {
        ArmWorld {
            task,
            config: ArmConfig::INITIAL,
        }
    }

    /// Default instance: target (1.0, 2.0) inside the ten-obstacle ring.
    /// Perturbed instances draw the offset per seed from `OFFSET_CHOICES` on
    /// each axis; `offset_override` pins it instead.
    pub fn from_seed(perturbed: bool, seed: u64, offset_override: Option<(f64, f64)>) -> Self {
        let offset = if !perturbed {
            Vec2::new(0.0, 0.0)
        } else if let Some((dx, dy)) = offset_override {
            Vec2::new(dx, dy)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dx = OFFSET_CHOICES[rng.gen_range(0..OFFSET_CHOICES.len())];
            let dy = OFFSET_CHOICES[rng.gen_range(0..OFFSET_CHOICES.len())];
            Vec2::new(dx, dy)
        };
        ArmWorld::new(ArmTask {
            target: Vec2::new(1.0, 2.0),
            obstacles: default_obstacle_ring(),
            offset,
            reach_tolerance: REACH_TOLERANCE,
        })
    }

    pub fn config(&self) -> &ArmConfig {
        &self.config
    }

    pub fn task(&self) -> &ArmTask {
        &self.task
    }

    /// Executes one commanded move. The hidden offset shifts the commanded
    /// target before IK; aborted moves leave the pose untouched.
    pub fn apply_move(&mut self, commanded_x: f64, commanded_y: f64) -> ObservationText {
        let executed = Vec2::new(commanded_x + self.task.offset.x, commanded_y + self.task.offset.y);
        let next = match inverse_kinematics(executed, &self.config) {
            Ok(config) => config,
            Err(_) => return OUT_OF_REACH_OBSERVATION.to_string(),
        };
        match path_collision_check(&self.config, &next, &self.task.obstacles) {
            PathCheck::Colliding => COLLISION_OBSERVATION.to_string(),
            PathCheck::Clear => {
                self.config = next;
                SUCCESS_OBSERVATION.to_string()
            }
        }
    }

    /// Joint positions in the exact transcript format, post-offset.
    pub fn check(&self) -> ObservationText {
        let (joint1, gripper) = forward_kinematics(self.config.theta0, self.config.theta1);
        format!(
            "Joint positions: 'Joint 0': [0.00, 0.00] 'Joint 1': [{}, {}] 'Gripper': [{}, {}]",
            fmt2(joint1.x),
            fmt2(joint1.y),
            fmt2(gripper.x),
            fmt2(gripper.y)
        )
    }
}

fn fmt1(v: f64) -> String {
    format!("{v:.1}")
}

impl World for ArmWorld {
    fn describe(&self) -> String {
        format!(
            "The tabletop environment has a robot arm, several obstacles and a goal location.\n\
             The robot arm has two joints and a gripper, the goal is to  {} .\n\
             \n\
             The robot arm has the following primitive actions:\n{}",
            self.goal_text(),
            self.action_menu()
        )
    }

    fn goal_text(&self) -> String {
        let obstacles = self
            .task
            .obstacles
            .iter()
            .map(|o| {
                format!(
                    "[{}, {}] radius {}",
                    fmt1(o.center.x),
                    fmt1(o.center.y),
                    fmt1(o.radius)
                )
            })
            .collect::<Vec<_>>()
            .join(", ");
        format!(
            "move the gripper to [{}, {}], while avoid collision with the obstacles at, {}",
            fmt1(self.task.target.x),
            fmt1(self.task.target.y),
            obstacles
        )
    }

    fn action_menu(&self) -> String {
        "1) Move x y: Move the gripper to (x, y). The rotation of the joints will be calculated by inverse kinematics.\n\
         2) Check: Check Robot arm joint positions\n\
         3) Help: View the available action options."
            .to_string()
    }

    fn state_summary(&self) -> String {
        self.check()
    }

    fn apply(&mut self, command: &str) -> Result<ObservationText, ()> {
        let tokens: Vec<&str> = command.split_whitespace().collect();
        match tokens.as_slice() {
            [kw] if kw.eq_ignore_ascii_case("check") => Ok(self.check()),
            [kw, x, y] if kw.eq_ignore_ascii_case("move") => {
                let x: f64 = x.parse().map_err(|_| ())?;
                let y: f64 = y.parse().map_err(|_| ())?;
                if !x.is_finite() || !y.is_finite() {
                    return Err(());
                }
                Ok(self.apply_move(x, y))
            }
            _ => Err(()),
        }
    }

    fn succeeded(&self) -> bool {
        self.config.gripper().dist(self.task.target) <= self.task.reach_tolerance
    }
}
