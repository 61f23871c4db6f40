"""Replicate HPO curves by subsampling evaluated configurations."""

from overtune.replication.replicates import ReplicateCurves, replicate_curves, subsample_size

__all__ = ["ReplicateCurves", "replicate_curves", "subsample_size"]
