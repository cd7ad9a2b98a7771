package app.ui;

import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import java.awt.event.MouseAdapter;
import java.awt.event.MouseEvent;
import javax.swing.JButton;
import javax.swing.JLabel;

public class StatusPanel {
    private JLabel status;
    private JButton refresh;
    private JButton zoomIn;
    private JButton zoomOut;
    private boolean dragging;

    void install() {
        refresh.addActionListener(new ActionListener() {
            public void actionPerformed(ActionEvent e) {
                status.setText("refreshing");
            }
        });
        zoomIn.addActionListener(e -> {
            if (e.getSource() == zoomIn) {
                view.zoom(2);
            }
        });
        status.addMouseListener(new MouseAdapter() {
            public void mouseClicked(MouseEvent e) {
                if (!dragging) {
                    status.setText("");
                }
            }
        });
    }
}
