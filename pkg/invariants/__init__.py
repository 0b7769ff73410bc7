# Initialize invariants package