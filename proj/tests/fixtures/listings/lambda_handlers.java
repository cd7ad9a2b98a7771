class PagedLambdaView {
private void registerWidgetHandlers() {
 view.resetPageButton().addActionListener(
              e -> requestData(pageSize, null));

 view.previousPageButton().addActionListener(e -> {
  if (hasPreviousBookmark())
    requestData(pageSize, getPreviousBookmark());
 });

 //...
}
}
