//! Small built-in STRIPS domains used by tests and quick-start runs.

/// Four-operator blocksworld with typed blocks.
pub const BLOCKS_DOMAIN: &str = r#"
(define (domain blocksworld)
  (:requirements :strips :typing)
  (:types block)
  (:predicates (on ?x - block ?y - block)
               (ontable ?x - block)
               (clear ?x - block)
               (holding ?x - block)
               (handempty))
  (:action pick-up
    :parameters (?x - block)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (not (ontable ?x)) (not (clear ?x)) (not (handempty))
                 (holding ?x)))
  (:action put-down
    :parameters (?x - block)
    :precondition (holding ?x)
    :effect (and (not (holding ?x)) (clear ?x) (handempty) (ontable ?x)))
  (:action stack
    :parameters (?x - block ?y - block)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (not (holding ?x)) (not (clear ?y)) (clear ?x)
                 (handempty) (on ?x ?y)))
  (:action unstack
    :parameters (?x - block ?y - block)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (clear ?x))
                 (not (handempty)) (not (on ?x ?y)))))
"#;

/// Two blocks on the table; goal stacks a on b.
pub const BLOCKS_2_STACK: &str = r#"
(define (problem blocks-2)
  (:domain blocksworld)
  (:objects a b - block)
  (:init (ontable a) (ontable b) (clear a) (clear b) (handempty))
  (:goal (on a b)))
"#;

/// Three blocks on the table; goal stacks a on b.
pub const BLOCKS_3_STACK: &str = r#"
(define (problem blocks-3)
  (:domain blocksworld)
  (:objects a b c - block)
  (:init (ontable a) (ontable b) (ontable c) (clear a) (clear b) (clear c)
         (handempty))
  (:goal (on a b)))
"#;

/// One-gripper transport domain.
pub const GRIPPER_DOMAIN: &str = r#"
(define (domain gripper)
  (:requirements :strips :typing)
  (:types room ball)
  (:predicates (at-robot ?r - room)
               (at ?b - ball ?r - room)
               (carrying ?b - ball)
               (free-arm))
  (:action move
    :parameters (?from - room ?to - room)
    :precondition (at-robot ?from)
    :effect (and (not (at-robot ?from)) (at-robot ?to)))
  (:action pick
    :parameters (?b - ball ?r - room)
    :precondition (and (at ?b ?r) (at-robot ?r) (free-arm))
    :effect (and (carrying ?b) (not (at ?b ?r)) (not (free-arm))))
  (:action drop
    :parameters (?b - ball ?r - room)
    :precondition (and (carrying ?b) (at-robot ?r))
    :effect (and (at ?b ?r) (not (carrying ?b)) (free-arm))))
"#;

/// Two balls in room1; goal moves ball1 to room2.
pub const GRIPPER_PROBLEM: &str = r#"
(define (problem gripper-2)
  (:domain gripper)
  (:objects room1 room2 - room ball1 ball2 - ball)
  (:init (at-robot room1) (at ball1 room1) (at ball2 room1) (free-arm))
  (:goal (and (at ball1 room2))))
"#;

/// Grid navigation over declared adjacency, with symmetric shortest routes.
pub const NAV_DOMAIN: &str = r#"
(define (domain nav)
  (:requirements :strips :typing)
  (:types cell)
  (:predicates (at ?c - cell) (adjacent ?a - cell ?b - cell))
  (:action move
    :parameters (?from - cell ?to - cell)
    :precondition (and (at ?from) (adjacent ?from ?to))
    :effect (and (not (at ?from)) (at ?to))))
"#;

/// 2x2 grid from c00 to c11: two symmetric optimal routes.
pub const NAV_PROBLEM: &str = r#"
(define (problem nav-2x2)
  (:domain nav)
  (:objects c00 c01 c10 c11 - cell)
  (:init (at c00)
         (adjacent c00 c01) (adjacent c01 c00)
         (adjacent c00 c10) (adjacent c10 c00)
         (adjacent c01 c11) (adjacent c11 c01)
         (adjacent c10 c11) (adjacent c11 c10))
  (:goal (at c11)))
"#;
