"""
Serializers del módulo de métricas.
Convierten MetricReport a un registro plano JSON y viceversa.
"""
from rest_framework import serializers

from .domain import MetricReport


class MetricReportSerializer(serializers.Serializer):
    """Registro plano; las métricas indefinidas viajan como null."""
    accuracy = serializers.FloatField(allow_null=True, min_value=0.0, max_value=1.0)
    sensitivity = serializers.FloatField(allow_null=True, min_value=0.0, max_value=1.0)
    specificity = serializers.FloatField(allow_null=True, min_value=0.0, max_value=1.0)
    ppv = serializers.FloatField(allow_null=True, min_value=0.0, max_value=1.0)
    npv = serializers.FloatField(allow_null=True, min_value=0.0, max_value=1.0)
    f1 = serializers.FloatField(allow_null=True, min_value=0.0, max_value=1.0)
    youden = serializers.FloatField(allow_null=True, min_value=-1.0, max_value=1.0)
    auc = serializers.FloatField(allow_null=True, min_value=0.0, max_value=1.0)

    def to_representation(self, instance):
        if isinstance(instance, MetricReport):
            instance = instance.to_dict()
        return super().to_representation(instance)

    def create(self, validated_data):
        return MetricReport.from_dict(validated_data)
