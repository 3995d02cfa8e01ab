"""
Serializer del documento JSON de configuración de experimentos.
"""
from rest_framework import serializers

from core.exceptions import ArgumentError
from dataset.serializers import SplitPlanSerializer
from filter_fs.serializers import FilterSettingsSerializer
from ga_wrapper.serializers import GAConfigSerializer
from learners.serializers import ClassifierSpecSerializer
from stacking.serializers import StackSpecSerializer
from .domain import MethodRef

DEFAULT_PIPELINE = ['stacked_ga']

DEFAULT_PLANS = [
    {'kind': 'holdout', 'fraction': 0.75},
    {'kind': 'kfold', 'k': 2},
    {'kind': 'kfold', 'k': 5},
    {'kind': 'kfold', 'k': 10},
]

NESTED_DEFAULTS = {
    'split': {'kind': 'kfold', 'k': 10},
    'plans': DEFAULT_PLANS,
    'learners': [],
    'ga': {},
    'filter': {},
}


class ExperimentConfigSerializer(serializers.Serializer):
    """
    Documento de configuración de `run`, `matrix` e `importance`.

    Ejemplo mínimo:
        {"dataset": "data/heart.dat", "seed": 42, "pipeline": ["rf", "knn", "stacked_ga"]}

    Claves desconocidas en el nivel superior son un error de validación.
    """
    dataset = serializers.CharField(required=False, allow_null=True, default=None)
    seed = serializers.IntegerField(required=False, default=0, min_value=0)
    threads = serializers.IntegerField(required=False, allow_null=True, default=None, min_value=1)
    output_dir = serializers.CharField(required=False, allow_null=True, default=None)
    nested = serializers.BooleanField(required=False, default=False)
    hard_labels = serializers.BooleanField(required=False, default=False)
    pipeline = serializers.ListField(
        child=serializers.CharField(), required=False, allow_empty=False, default=DEFAULT_PIPELINE,
    )
    split = SplitPlanSerializer(required=False)
    plans = SplitPlanSerializer(many=True, required=False, allow_empty=False)
    learners = ClassifierSpecSerializer(many=True, required=False)
    ga = GAConfigSerializer(required=False)
    stack = StackSpecSerializer(required=False, allow_null=True, default=None)
    filter = FilterSettingsSerializer(required=False)
    importance_runs = serializers.IntegerField(required=False, default=30, min_value=1)

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({key: "clave desconocida" for key in unknown})
            # los sub-documentos ausentes o parciales se completan con sus valores por defecto
            data = {**NESTED_DEFAULTS, **data}
            for key, default in NESTED_DEFAULTS.items():
                if isinstance(default, dict) and isinstance(data[key], dict):
                    data[key] = {**default, **data[key]}
        return super().to_internal_value(data)

    def validate_pipeline(self, value):
        names = []
        for item in value:
            try:
                names.append(MethodRef.parse(item).name)
            except ArgumentError as exc:
                raise serializers.ValidationError(exc.message)
        if len(set(names)) != len(names):
            raise serializers.ValidationError("métodos repetidos en el pipeline")
        return names

    def validate_learners(self, value):
        families = [item['family'] for item in value]
        if len(set(families)) != len(families):
            raise serializers.ValidationError("cada familia puede configurarse una sola vez")
        return value
