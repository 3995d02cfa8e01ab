"""
Serializers de la especificación del ensamble apilado.
"""
from rest_framework import serializers

from core.exceptions import ArgumentError
from learners.serializers import ClassifierSpecSerializer
from .domain import StackSpec, parse_meta_mode


class StackSpecSerializer(serializers.Serializer):
    """
    {"first_level": [ClassifierSpec...], "meta_learner": ClassifierSpec,
     "meta_mode": "oof:5" | "resub", "hard_labels": false}
    """
    first_level = ClassifierSpecSerializer(many=True, allow_empty=False)
    meta_learner = ClassifierSpecSerializer()
    meta_mode = serializers.CharField(required=False, default='oof:5')
    hard_labels = serializers.BooleanField(required=False, default=False)
    seed = serializers.IntegerField(required=False, allow_null=True, default=None, min_value=0)

    def validate_meta_mode(self, value):
        try:
            mode, k = parse_meta_mode(value)
        except ArgumentError as exc:
            raise serializers.ValidationError(exc.message)
        return 'resub' if mode == 'resub' else f'oof:{k}'

    def to_representation(self, instance):
        if isinstance(instance, StackSpec):
            return instance.to_dict()
        return super().to_representation(instance)

    def create(self, validated_data):
        default_seed = self.context.get('default_seed', 0)
        first_level = [
            ClassifierSpecSerializer(context={'default_seed': default_seed + index}).create(item)
            for index, item in enumerate(validated_data['first_level'])
        ]
        meta = ClassifierSpecSerializer(context={'default_seed': default_seed}).create(validated_data['meta_learner'])
        seed = validated_data.get('seed')
        try:
            return StackSpec(
                first_level, meta,
                meta_mode=validated_data['meta_mode'],
                hard_labels=validated_data['hard_labels'],
                seed=seed if seed is not None else default_seed,
            )
        except ArgumentError as exc:
            raise serializers.ValidationError({'first_level': exc.message})
