"""
Schema of experiment config files.

A config is one JSON object. Names are the CLI spec strings understood by
concepts.formats.build_class, sampling.formats.build_labels,
sampling.formats.build_distribution and learners.registry.get_learner.
"""

from rest_framework import serializers

from learners.registry import LEARNERS
from pac_lab.conf import lab_setting

SCENARIOS = ("agnostic", "realizable")
DEFAULT_LEARNERS = {"agnostic": "erm-nc", "realizable": "realizable"}
MAX_SEED = 2**64 - 1


class ExperimentSpecSerializer(serializers.Serializer):
    scenario = serializers.ChoiceField(choices=SCENARIOS)
    concept_class = serializers.CharField()
    labels = serializers.CharField(default="ground-state")
    distribution = serializers.CharField()
    learner = serializers.ChoiceField(choices=sorted(LEARNERS), required=False)
    sample_sizes = serializers.ListField(child=serializers.IntegerField(min_value=1), default=list)
    epsilons = serializers.ListField(
        child=serializers.FloatField(min_value=0, max_value=1), min_length=1
    )
    delta = serializers.FloatField(min_value=0, max_value=1)
    eta_bound = serializers.FloatField(min_value=0, max_value=0.5, default=0.0)
    trials = serializers.IntegerField(min_value=1)
    master_seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED, required=False)
    m_from_bound = serializers.BooleanField(default=False)

    def validate_epsilons(self, value):
        if any(e <= 0 or e >= 1 for e in value):
            raise serializers.ValidationError("Every epsilon must lie in (0, 1).")
        return value

    def validate_delta(self, value):
        if not 0 < value < 1:
            raise serializers.ValidationError("delta must lie in (0, 1).")
        return value

    def validate_eta_bound(self, value):
        if value >= 0.5:
            raise serializers.ValidationError("eta_bound must be below 1/2.")
        return value

    def validate(self, attrs):
        if not attrs.get("m_from_bound") and not attrs.get("sample_sizes"):
            raise serializers.ValidationError("Give sample_sizes or set m_from_bound; the grid is empty.")
        attrs.setdefault("learner", DEFAULT_LEARNERS[attrs["scenario"]])
        attrs.setdefault("master_seed", lab_setting("DEFAULT_SEED"))
        return attrs
