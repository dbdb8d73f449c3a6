"""
API URL Configuration
"""
from django.urls import path
from . import views

urlpatterns = [
    path('health/', views.HealthCheckView.as_view(), name='health-check'),
    path('weights/', views.WeightsView.as_view(), name='weights'),
    path('measure/', views.MeasureView.as_view(), name='measure'),
    path('diagonal/', views.DiagonalView.as_view(), name='diagonal'),
    path('shift/', views.ShiftView.as_view(), name='shift'),
    path('bell/', views.BellView.as_view(), name='bell'),
    path('suite/', views.SuiteView.as_view(), name='suite'),
]
