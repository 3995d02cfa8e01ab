"""
Serializers de parámetros y resultados de filtros.
"""
from rest_framework import serializers

from learners.serializers import ClassifierSpecSerializer
from .services import DEFAULT_BINS, DEFAULT_RELIEF_K, FILTERS


class FilterSettingsSerializer(serializers.Serializer):
    """Parámetros de `relief` / `fcbf` y clasificador que puntúa el filtro."""
    delta = serializers.FloatField(required=False, default=0.0, min_value=0.0)
    bins = serializers.IntegerField(required=False, default=DEFAULT_BINS, min_value=2)
    k = serializers.IntegerField(required=False, default=DEFAULT_RELIEF_K, min_value=1)
    iterations = serializers.IntegerField(required=False, allow_null=True, default=None, min_value=1)
    top_q = serializers.IntegerField(required=False, allow_null=True, default=None, min_value=1)
    scorer = ClassifierSpecSerializer(required=False, allow_null=True, default=None)


class FilterParamsSerializer(FilterSettingsSerializer):
    method = serializers.ChoiceField(choices=FILTERS)


class FilterResultSerializer(serializers.Serializer):
    """{"method", "selected", "weights", "elapsed_ms"} (+ orden y aviso)."""
    method = serializers.CharField()
    selected = serializers.ListField(child=serializers.IntegerField(min_value=0))
    weights = serializers.ListField(child=serializers.FloatField())
    elapsed_ms = serializers.FloatField(min_value=0.0)
    ordering = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)
    warning = serializers.CharField(required=False, allow_null=True)

    def to_representation(self, instance):
        if hasattr(instance, 'to_dict'):
            instance = instance.to_dict()
        return super().to_representation(instance)
