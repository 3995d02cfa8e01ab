"""
Serializers de especificaciones de clasificadores.
"""
from rest_framework import serializers

from core.exceptions import ArgumentError
from .classifiers import ESTIMATORS
from .domain import DEFAULT_HYPERPARAMETERS, ClassifierSpec, resolve_family


class ClassifierSpecSerializer(serializers.Serializer):
    """
    {"family": ..., "hyperparameters": {...}, "seed": ...}

    Las claves de hiperparámetros desconocidas y los valores fuera de rango
    son errores de validación. Sin `seed`, la semilla la resuelve quien
    arma la configuración (derivada de la semilla maestra).
    """
    family = serializers.CharField()
    hyperparameters = serializers.DictField(required=False, default=dict)
    seed = serializers.IntegerField(required=False, allow_null=True, default=None, min_value=0)

    def validate_family(self, value):
        try:
            return resolve_family(value)
        except ArgumentError as exc:
            raise serializers.ValidationError(exc.message)

    def validate(self, attrs):
        family = attrs['family']
        hyperparameters = attrs.get('hyperparameters') or {}
        unknown = sorted(set(hyperparameters) - set(DEFAULT_HYPERPARAMETERS[family]))
        if unknown:
            raise serializers.ValidationError({
                'hyperparameters': f"claves desconocidas para {family}: {unknown}"
            })
        params = {**DEFAULT_HYPERPARAMETERS[family], **hyperparameters}
        try:
            ESTIMATORS[family](params)
        except ArgumentError as exc:
            raise serializers.ValidationError({'hyperparameters': exc.message})
        attrs['hyperparameters'] = hyperparameters
        return attrs

    def to_representation(self, instance):
        if isinstance(instance, ClassifierSpec):
            return instance.to_dict()
        return super().to_representation(instance)

    def create(self, validated_data):
        seed = validated_data.get('seed')
        return ClassifierSpec(
            validated_data['family'],
            validated_data.get('hyperparameters') or {},
            seed if seed is not None else self.context.get('default_seed', 0),
        )
