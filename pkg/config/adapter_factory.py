"""
어댑터 팩토리 - 설정에 따라 적절한 어댑터를 생성
"""

from functools import partial
from typing import Callable, Optional, TextIO, Tuple

import numpy as np

from config.settings import ConfigPort
from core.entities.patterns import PointPattern
from core.exceptions import ConfigError
from core.ports.center_heuristic import CenterHeuristicPort
from core.ports.codebook_store import CodebookStorePort
from core.ports.result_writer import ResultWriterPort
from core.ports.source_sampler import SourceSamplerPort

# Source Sampler Adapters
from adapters.sampling.fixed_pattern_sampler import FixedPatternSamplerAdapter
from adapters.sampling.gaussian_sampler import GaussianFixedSamplerAdapter
from adapters.sampling.poisson_sampler import PoissonUnitSquareSamplerAdapter
from adapters.sampling.quantized_pair import sample_quantized_pair, sample_quantized_pair_poisson

# Center Heuristic Adapters
from adapters.centers.exact import ExactCenterAdapter
from adapters.centers.modified_single_hub import ModifiedSingleHubCenterAdapter
from adapters.centers.multi_hub import MultiHubCenterAdapter
from adapters.centers.single_hub import SingleHubCenterAdapter

# Storage Adapters
from adapters.storage.csv_writer import CsvResultWriterAdapter
from adapters.storage.text_codebook_store import TextCodebookStoreAdapter

SAMPLER_TYPES = ("gaussian", "poisson", "fixed")
HEURISTIC_TYPES = ("single_hub", "multi_hub", "modified_single_hub", "exact")

PairDraw = Callable[[np.random.Generator], Tuple[PointPattern, PointPattern]]


class AdapterFactory:
    """어댑터 팩토리 클래스"""

    @staticmethod
    def create_sampler_adapter(adapter_type: str = "gaussian", **params) -> SourceSamplerPort:
        """소스 샘플러 어댑터 생성"""
        kind = adapter_type.lower()
        if kind == "gaussian":
            return GaussianFixedSamplerAdapter(k=params["k"], d=params["d"])
        elif kind == "poisson":
            return PoissonUnitSquareSamplerAdapter(mean_cardinality=params["mean_cardinality"])
        elif kind == "fixed":
            return FixedPatternSamplerAdapter(params["pattern"])
        else:
            raise ConfigError(f"지원하지 않는 샘플러 타입: {adapter_type}")

    @staticmethod
    def create_center_heuristic_adapter(adapter_type: str = "modified_single_hub") -> CenterHeuristicPort:
        """센터 계산 휴리스틱 어댑터 생성"""
        kind = adapter_type.lower()
        if kind == "single_hub":
            return SingleHubCenterAdapter()
        elif kind == "multi_hub":
            return MultiHubCenterAdapter()
        elif kind == "modified_single_hub":
            return ModifiedSingleHubCenterAdapter()
        elif kind == "exact":
            return ExactCenterAdapter()
        else:
            raise ConfigError(f"지원하지 않는 휴리스틱 타입: {adapter_type}")

    @staticmethod
    def create_codebook_store_adapter(adapter_type: str = "text") -> CodebookStorePort:
        """코드북 저장소 어댑터 생성"""
        if adapter_type.lower() == "text":
            return TextCodebookStoreAdapter()
        raise ConfigError(f"지원하지 않는 코드북 저장소 타입: {adapter_type}")

    @staticmethod
    def create_result_writer_adapter(
        stream: TextIO,
        config: ConfigPort,
        adapter_type: str = "csv",
        close_stream: bool = False,
    ) -> ResultWriterPort:
        """결과 출력 어댑터 생성"""
        if adapter_type.lower() == "csv":
            return CsvResultWriterAdapter(
                stream, config.get_app_name(), config.get_app_version(), close_stream=close_stream
            )
        raise ConfigError(f"지원하지 않는 결과 출력 타입: {adapter_type}")

    @staticmethod
    def create_pair_draw(
        n_grid: int, k: Optional[int] = None, mean_cardinality: Optional[float] = None
    ) -> PairDraw:
        """양자화 쌍 샘플링 함수 생성 (고정 k 또는 Poisson 평균 중 하나)"""
        if (k is None) == (mean_cardinality is None):
            raise ConfigError("give exactly one of k and mean_cardinality for quantized pairs")
        if k is not None:
            return partial(sample_quantized_pair, n_grid, k)
        return partial(sample_quantized_pair_poisson, n_grid, mean_cardinality)


# UseCase 생성 함수들
def get_bound_evaluation_use_case(config: ConfigPort, bits: bool = False, workers: Optional[int] = None):
    """경계 계산 유스케이스 생성"""
    from core.usecases.bound_evaluation import BoundEvaluationUseCase

    return BoundEvaluationUseCase(workers=workers or config.get_workers(), bits=bits)


def get_codebook_training_use_case(
    config: ConfigPort,
    sampler: SourceSamplerPort,
    heuristic: CenterHeuristicPort,
    workers: Optional[int] = None,
    max_iters: Optional[int] = None,
    rel_tol: Optional[float] = None,
    window: Optional[int] = None,
):
    """코드북 학습 유스케이스 생성 (인자가 주어지면 설정값보다 우선)"""
    from core.usecases.codebook_training import CodebookTrainingUseCase

    return CodebookTrainingUseCase(
        sampler,
        heuristic,
        max_iters=max_iters if max_iters is not None else config.get_max_iters(),
        rel_tol=rel_tol if rel_tol is not None else config.get_rel_tol(),
        window=window if window is not None else config.get_convergence_window(),
        workers=workers or config.get_workers(),
    )


def get_distortion_estimation_use_case(config: ConfigPort, sampler: SourceSamplerPort, workers: Optional[int] = None):
    """왜곡 추정 유스케이스 생성"""
    from core.usecases.distortion_estimation import DistortionEstimationUseCase

    return DistortionEstimationUseCase(
        sampler, workers=workers or config.get_workers(), chunk_size=config.get_chunk_size()
    )


def get_verification_use_case(
    config: ConfigPort, seed: Optional[int] = 0, quick: bool = False, workers: Optional[int] = None
):
    """검증 유스케이스 생성"""
    from core.usecases.verification import VerificationUseCase

    heuristics = {name: AdapterFactory.create_center_heuristic_adapter(name) for name in HEURISTIC_TYPES}
    return VerificationUseCase(
        heuristics=heuristics,
        gaussian_sampler=lambda k, d: AdapterFactory.create_sampler_adapter("gaussian", k=k, d=d),
        poisson_sampler=lambda mean: AdapterFactory.create_sampler_adapter("poisson", mean_cardinality=mean),
        pair_draw=AdapterFactory.create_pair_draw,
        seed=seed,
        quick=quick,
        workers=workers or config.get_workers(),
    )
