//! Grid-world mobile robot: four directional actions, ball pickup and
//! delivery, and the inverted-action-mapping perturbation.
//!
//! The grid is the inclusive box [-4, 4]^2. Moving into a wall reports a bump
//! and leaves the robot in place. Success requires holding the ball while
//! standing on the goal cell.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::core::{ObservationText, World};

pub const BOUND: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    fn manhattan(&self, other: Cell) -> i32 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Forward,
        Direction::Backward,
        Direction::Left,
        Direction::Right,
    ];
}

/// Maps each direction to a unit displacement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionMap {
    inverted: bool,
}

impl ActionMap {
    pub const BASIC: ActionMap = ActionMap { inverted: false };
    pub const INVERTED: ActionMap = ActionMap { inverted: true };

    /// The nominal displacement: forward (0, 1), backward (0, -1),
    /// left (-1, 0), right (1, 0).
    pub fn nominal(direction: Direction) -> (i32, i32) {
        match direction {
            Direction::Forward => (0, 1),
            Direction::Backward => (0, -1),
            Direction::Left => (-1, 0),
            Direction::Right => (1, 0),
        }
    }

    pub fn displacement(&self, direction: Direction) -> (i32, i32) {
        let (dx, dy) = Self::nominal(direction);
        if self.inverted {
            (-dx, -dy)
        } else {
            (dx, dy)
        }
    }

    /// Opposite-displacement involution of this map.
    pub fn invert(&self) -> ActionMap {
        ActionMap {
            inverted: !self.inverted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallState {
    At(Cell),
    Held,
}

pub struct NavWorld {
    robot: Cell,
    ball: BallState,
    goal: Cell,
    map: ActionMap,
}

fn clamp_to_bounds(v: i32) -> i32 {
    v.clamp(-BOUND, BOUND)
}

/// Simulates where a nominal-assumption plan ends its approach to `ball` when
/// every move is inverted: x moves first, then y moves, clamped at the walls.
/// Instance generation rejects layouts where this lands on the ball so a
/// planner that never probes the dynamics cannot succeed by accident.
fn mirrored_approach_end(robot: Cell, ball: Cell) -> Cell {
    let mut pos = robot;
    let dx = ball.x - robot.x;
    for _ in 0..dx.abs() {
        pos.x = clamp_to_bounds(pos.x - dx.signum());
    }
    let dy = ball.y - robot.y;
    for _ in 0..dy.abs() {
        pos.y = clamp_to_bounds(pos.y - dy.signum());
    }
    pos
}

impl NavWorld {
    pub fn new(robot: Cell, ball: Cell, goal: Cell, map: ActionMap) -> Self {
        NavWorld {
            robot,
            ball: BallState::At(ball),
            goal,
            map,
        }
    }

    /// Seed 0 is the canonical layout (robot (0,0), ball (1,0), goal (2,0));
    /// other seeds sample positions in [-3, 3]^2 with short pairwise paths so
    /// every instance is solvable well inside the step budget.
    pub fn from_seed(perturbed: bool, seed: u64) -> Self {
        let map = if perturbed {
            ActionMap::INVERTED
        } else {
            ActionMap::BASIC
        };
        if seed == 0 {
            return NavWorld::new(Cell::new(0, 0), Cell::new(1, 0), Cell::new(2, 0), map);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut pick = || Cell::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let robot = pick();
            let ball = pick();
            let goal = pick();
            let distinct = robot != ball && robot != goal && ball != goal;
            let short = robot.manhattan(ball) <= 6 && ball.manhattan(goal) <= 6;
            if distinct && short && mirrored_approach_end(robot, ball) != ball {
                return NavWorld::new(robot, ball, goal, map);
            }
        }
    }

    pub fn robot(&self) -> Cell {
        self.robot
    }

    pub fn ball(&self) -> BallState {
        self.ball
    }

    pub fn goal(&self) -> Cell {
        self.goal
    }

    pub fn initial_ball_cell(&self) -> Option<Cell> {
        match self.ball {
            BallState::At(c) => Some(c),
            BallState::Held => None,
        }
    }

    pub fn move_robot(&mut self, direction: Direction) -> ObservationText {
        let (dx, dy) = self.map.displacement(direction);
        let target = Cell::new(self.robot.x + dx, self.robot.y + dy);
        if target.x.abs() > BOUND || target.y.abs() > BOUND {
            format!(
                "You bumped into the wall. Current position: ({}, {}).",
                self.robot.x, self.robot.y
            )
        } else {
            self.robot = target;
            format!(
                "You moved. Current position: ({}, {}).",
                self.robot.x, self.robot.y
            )
        }
    }

    pub fn pick(&mut self) -> ObservationText {
        match self.ball {
            BallState::At(cell) if cell == self.robot => {
                self.ball = BallState::Held;
                "You picked up the ball.".to_string()
            }
            _ => "There is no ball here.".to_string(),
        }
    }

    pub fn check(&self) -> ObservationText {
        let ball = match self.ball {
            BallState::At(c) => format!("({}, {})", c.x, c.y),
            BallState::Held => "held".to_string(),
        };
        format!(
            "Robot at ({}, {}). Ball: {}. Goal at ({}, {}).",
            self.robot.x, self.robot.y, ball, self.goal.x, self.goal.y
        )
    }
}

impl World for NavWorld {
    fn describe(&self) -> String {
        format!(
            "The grid environment has a mobile robot, a ball, and a goal location. The grid spans x in [-{b}, {b}] and y in [-{b}, {b}].\n\
             The robot starts at ({rx}, {ry}). The goal is to {goal}.\n\
             \n\
             The robot has the following primitive actions:\n{menu}",
            b = BOUND,
            rx = self.robot.x,
            ry = self.robot.y,
            goal = self.goal_text(),
            menu = self.action_menu()
        )
    }

    fn goal_text(&self) -> String {
        let ball = match self.ball {
            BallState::At(c) => format!("({}, {})", c.x, c.y),
            BallState::Held => "in hand".to_string(),
        };
        format!(
            "reach the ball at {}, pick it up, and carry it to the goal location at ({}, {})",
            ball, self.goal.x, self.goal.y
        )
    }

    fn action_menu(&self) -> String {
        "1) Forward: Move the robot one cell in the +y direction.\n\
         2) Backward: Move the robot one cell in the -y direction.\n\
         3) Left: Move the robot one cell in the -x direction.\n\
         4) Right: Move the robot one cell in the +x direction.\n\
         5) Pick: Pick up the ball at the robot's current location.\n\
         6) Check: Check the robot, ball, and goal positions.\n\
         7) Help: View the available action options."
            .to_string()
    }

    fn state_summary(&self) -> String {
        self.check()
    }

    fn apply(&mut self, command: &str) -> Result<ObservationText, ()> {
        let token = command.trim();
        let direction = match token.to_ascii_lowercase().as_str() {
            "forward" => Some(Direction::Forward),
            "backward" => Some(Direction::Backward),
            "left" => Some(Direction::Left),
            "right" => Some(Direction::Right),
            _ => None,
        };
        if let Some(d) = direction {
            return Ok(self.move_robot(d));
        }
        match token.to_ascii_lowercase().as_str() {
            "pick" => Ok(self.pick()),
            "check" => Ok(self.check()),
            _ => Err(()),
        }
    }

    fn succeeded(&self) -> bool {
        self.ball == BallState::Held && self.robot == self.goal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical(map: ActionMap) -> NavWorld {
        NavWorld::new(Cell::new(0, 0), Cell::new(1, 0), Cell::new(2, 0), map)
    }

    #[test]
    fn basic_right_moves_right() {
        let mut world = canonical(ActionMap::BASIC);
        assert_eq!(world.move_robot(Direction::Right), "You moved. Current position: (1, 0).");
    }

    #[test]
    fn inverted_left_moves_right_and_forward_moves_down() {
        let mut world = canonical(ActionMap::INVERTED);
        assert_eq!(world.move_robot(Direction::Left), "You moved. Current position: (1, 0).");
        let mut world = canonical(ActionMap::INVERTED);
        assert_eq!(world.move_robot(Direction::Forward), "You moved. Current position: (0, -1).");
    }

    #[test]
    fn inversion_is_an_involution() {
        for d in Direction::ALL {
            assert_eq!(
                ActionMap::BASIC.invert().invert().displacement(d),
                ActionMap::BASIC.displacement(d)
            );
            let (dx, dy) = ActionMap::BASIC.displacement(d);
            assert_eq!(ActionMap::INVERTED.displacement(d), (-dx, -dy));
        }
    }

    #[test]
    fn wall_bump_does_not_move() {
        let mut world = NavWorld::new(Cell::new(4, 0), Cell::new(0, 0), Cell::new(1, 1), ActionMap::BASIC);
        assert_eq!(
            world.move_robot(Direction::Right),
            "You bumped into the wall. Current position: (4, 0)."
        );
        assert_eq!(world.robot(), Cell::new(4, 0));
    }

    #[test]
    fn pick_requires_colocation_and_is_single_shot() {
        let mut world = canonical(ActionMap::BASIC);
        assert_eq!(world.pick(), "There is no ball here.");
        world.move_robot(Direction::Right);
        assert_eq!(world.pick(), "You picked up the ball.");
        assert_eq!(world.ball(), BallState::Held);
        assert_eq!(world.pick(), "There is no ball here.");
    }

    #[test]
    fn check_formats_positions_and_held_state() {
        let mut world = canonical(ActionMap::BASIC);
        assert_eq!(world.check(), "Robot at (0, 0). Ball: (1, 0). Goal at (2, 0).");
        assert_eq!(world.check(), world.check());
        world.move_robot(Direction::Right);
        world.pick();
        assert_eq!(world.check(), "Robot at (1, 0). Ball: held. Goal at (2, 0).");
    }

    #[test]
    fn success_requires_held_ball_at_goal() {
        let mut world = canonical(ActionMap::BASIC);
        world.move_robot(Direction::Right);
        world.pick();
        assert!(!world.succeeded());
        world.move_robot(Direction::Right);
        assert!(world.succeeded());
    }

    #[test]
    fn seed_zero_is_canonical_and_seeds_are_deterministic() {
        let w = NavWorld::from_seed(false, 0);
        assert_eq!(w.check(), "Robot at (0, 0). Ball: (1, 0). Goal at (2, 0).");
        for seed in 1..30 {
            let a = NavWorld::from_seed(true, seed);
            let b = NavWorld::from_seed(true, seed);
            assert_eq!(a.check(), b.check());
            // Same positions regardless of perturbation.
            let c = NavWorld::from_seed(false, seed);
            assert_eq!(a.check(), c.check());
        }
    }

    #[test]
    fn generated_instances_defeat_mirrored_approach() {
        for seed in 0..60 {
            let w = NavWorld::from_seed(true, seed);
            let ball = w.initial_ball_cell().unwrap();
            assert_ne!(mirrored_approach_end(w.robot(), ball), ball, "seed {seed}");
            assert!(w.robot().manhattan(ball) <= 6);
            assert!(ball.manhattan(w.goal()) <= 6);
        }
    }
}
