"""
Serializers del módulo de datos.
"""
from rest_framework import serializers

from core.exceptions import ArgumentError
from .domain import SplitPlan


class SplitPlanSerializer(serializers.Serializer):
    """
    {"kind": "holdout", "fraction": 0.75} | {"kind": "kfold", "k": 10}

    Sin `seed`, la semilla se deriva de la semilla maestra al resolver la
    configuración del experimento.
    """
    kind = serializers.ChoiceField(choices=('holdout', 'kfold'))
    fraction = serializers.FloatField(required=False, default=0.75)
    k = serializers.IntegerField(required=False, default=10)
    stratified = serializers.BooleanField(required=False, default=True)
    seed = serializers.IntegerField(required=False, allow_null=True, default=None, min_value=0)

    def validate(self, attrs):
        try:
            SplitPlan(attrs['kind'], attrs['fraction'], attrs['k'], attrs['stratified'])
        except ArgumentError as exc:
            raise serializers.ValidationError(exc.message)
        return attrs

    def to_representation(self, instance):
        if isinstance(instance, SplitPlan):
            data = {'kind': instance.kind, 'stratified': instance.stratified, 'seed': instance.seed}
            if instance.kind == 'holdout':
                data['fraction'] = instance.fraction
            else:
                data['k'] = instance.k
            return data
        return super().to_representation(instance)

    def create(self, validated_data):
        seed = validated_data.get('seed')
        return SplitPlan(
            validated_data['kind'],
            validated_data['fraction'],
            validated_data['k'],
            validated_data['stratified'],
            seed if seed is not None else self.context.get('default_seed', 0),
        )
