"""Benchmark services: batches, reports, trajectories and result storage."""
